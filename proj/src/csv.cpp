#include "ruinadjust/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ruinadjust/errors.hpp"

namespace ruinadjust {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

void open_for_write(std::ofstream& out, const std::string& path) {
  out.open(path);
  if (!out) throw IoError("cannot open for writing: " + path);
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

Sample read_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);

  std::string line;
  if (!std::getline(in, line)) throw SpecError("empty input: " + path);
  line = strip_cr(line);
  if (line != "x") {
    throw SpecError("expected single-column input with header 'x', got header '" + line +
                    "'; multi-column or timestamped data is not accepted");
  }

  Sample sample;
  sample.origin = "file:" + path;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = strip_cr(line);
    if (line.empty()) continue;
    if (line.find(',') != std::string::npos) {
      throw SpecError("row " + std::to_string(row) + " has multiple columns; " +
                      "expected one value per row");
    }
    const char* begin = line.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
      throw SpecError("row " + std::to_string(row) + " is not a number: '" + line + "'");
    }
    if (!std::isfinite(v)) {
      throw SpecError("row " + std::to_string(row) + " is not finite");
    }
    sample.values.push_back(v);
  }
  if (in.bad()) throw IoError("read failed: " + path);
  if (sample.values.size() < 2) {
    throw SpecError("need at least 2 data rows, got " +
                    std::to_string(sample.values.size()));
  }
  return sample;
}

void write_sample_csv(const std::string& path, const std::vector<double>& values) {
  std::ofstream out;
  open_for_write(out, path);
  out << "x\n";
  for (double v : values) out << format_double(v) << '\n';
  finish_write(out, path);
}

void write_curve_csv(const std::string& path, const CgfCurve& curve) {
  std::ofstream out;
  open_for_write(out, path);
  out << "t,value,bounded\n";
  for (std::size_t i = 0; i < curve.t_grid.size(); ++i) {
    out << format_double(curve.t_grid[i]) << ',';
    if (curve.bounded[i]) out << format_double(curve.values[i]);
    out << ',' << (curve.bounded[i] ? "true" : "false") << '\n';
  }
  finish_write(out, path);
}

void write_trace_csv(const std::string& path, const RSelection& selection) {
  std::ofstream out;
  open_for_write(out, path);
  out << "r,w_hat,ci_lo,ci_hi\n";
  for (const REntry& e : selection.w_by_r) {
    out << e.r << ',';
    if (e.ok) {
      out << format_double(e.est.w_hat) << ',' << format_double(e.est.ci_lo) << ','
          << format_double(e.est.ci_hi);
    } else {
      out << ",,";
    }
    out << '\n';
  }
  finish_write(out, path);
}

void write_ruin_csv(const std::string& path, const RuinStudy& study) {
  std::ofstream out;
  open_for_write(out, path);
  out << "u,ruin_freq,stderr,mean_ruin_time\n";
  for (std::size_t i = 0; i < study.u_grid.size(); ++i) {
    out << format_double(study.u_grid[i]) << ',' << format_double(study.ruin_freq[i])
        << ',' << format_double(study.freq_stderr[i]) << ',';
    if (!std::isnan(study.ruin_time_mean[i])) {
      out << format_double(study.ruin_time_mean[i]);
    }
    out << '\n';
  }
  finish_write(out, path);
}

void write_replicates_csv(const std::string& path, const std::vector<double>& values) {
  std::ofstream out;
  open_for_write(out, path);
  out << "w_hat\n";
  for (double v : values) out << format_double(v) << '\n';
  finish_write(out, path);
}

}  // namespace ruinadjust
