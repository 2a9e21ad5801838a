#include "ruinadjust/subadditive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ruinadjust/processes.hpp"

namespace ruinadjust {

void validate(const SubadditiveSeq& seq) {
  if (seq.h.size() != seq.delta.size()) {
    throw SpecError("h and delta must have equal length");
  }
  if (seq.h.empty()) throw SpecError("empty sequence");
  for (double v : seq.h) {
    if (!std::isfinite(v)) throw SpecError("h must be finite");
  }
  for (std::size_t i = 0; i < seq.delta.size(); ++i) {
    if (!std::isfinite(seq.delta[i])) throw SpecError("delta must be finite");
    if (i > 0 && seq.delta[i] < seq.delta[i - 1]) {
      throw SpecError("delta must be non-decreasing");
    }
  }
}

LimitEstimate estimate_limit(const SubadditiveSeq& seq) {
  validate(seq);
  const std::size_t N = seq.h.size();
  if (N < 4) throw SpecError("estimate_limit needs at least 4 terms");

  auto h = [&](std::size_t n) { return seq.h[n - 1]; };        // 1-based
  auto delta = [&](std::size_t n) { return seq.delta[n - 1]; };

  LimitEstimate out;
  out.lambda_hat = h(N) / static_cast<double>(N);

  // Is delta constant over its trailing quarter (at least the last 2 terms)?
  const std::size_t tail_len = std::max<std::size_t>(2, N / 4);
  out.tail_exact = true;
  for (std::size_t n = N - tail_len + 1; n <= N; ++n) {
    if (delta(n) != delta(N)) {
      out.tail_exact = false;
      break;
    }
  }

  for (std::size_t m = 1; 2 * m <= N; ++m) {
    double series = 0.0;
    for (std::size_t r = 2 * m; r <= N; ++r) {
      series += delta(r) / (static_cast<double>(r) * static_cast<double>(r + 1));
    }
    if (out.tail_exact) {
      // sum_{r=N+1..inf} 1/(r(r+1)) telescopes to 1/(N+1).
      series += delta(N) / static_cast<double>(N + 1);
    }
    out.m_values.push_back(static_cast<int>(m));
    out.bound_at_m.push_back(h(m) / static_cast<double>(m) -
                             delta(m) / static_cast<double>(m) + 4.0 * series);
  }

  out.worst_violation = -std::numeric_limits<double>::infinity();
  double h_scale = 1.0;
  for (double v : seq.h) h_scale = std::max(h_scale, std::abs(v));
  for (std::size_t n = 1; n < N; ++n) {
    for (std::size_t m = 1; n + m <= N; ++m) {
      const double gap = h(n + m) - h(n) - h(m) - delta(n + m);
      if (gap > out.worst_violation) {
        out.worst_violation = gap;
        out.violation_n = static_cast<int>(n);
        out.violation_m = static_cast<int>(m);
      }
    }
  }
  // Rounding in h evaluations must not read as a violation; the slack matches
  // the convexity slack used for curve checks.
  out.violation_found = out.worst_violation > 1e-12 * h_scale;
  if (!out.violation_found) {
    out.violation_n = 0;
    out.violation_m = 0;
  }
  return out;
}

namespace {

double default_shift_bound(const ModelSpec& spec) {
  const double abs_mean = innovation_abs_mean(spec.innovation);
  switch (spec.kind) {
    case ModelKind::IID:
      return 0.0;
    case ModelKind::MA1:
      return std::abs(spec.a) * abs_mean;
    case ModelKind::AR1:
      return std::abs(spec.a) / (1.0 - std::abs(spec.a)) * abs_mean;
    default:
      throw SpecError(
          "no default coupling bound for this model; pass shift_bound explicitly");
  }
}

}  // namespace

CgfSubadditivityCheck check_cgf_subadditivity(const ModelSpec& spec, double t,
                                              int n_max, std::uint64_t seed,
                                              int reps, double shift_bound) {
  validate(spec);
  if (!(t > 0.0) || !std::isfinite(t)) throw SpecError("t must be positive and finite");
  if (n_max < 2) throw SpecError("n_max must be at least 2");
  if (reps < 100) throw SpecError("reps must be at least 100");
  const double D = shift_bound < 0.0 ? default_shift_bound(spec) : shift_bound;

  // exponent[n-1][j] = t * S_n for replication j.
  std::vector<std::vector<double>> exponent(
      static_cast<std::size_t>(n_max),
      std::vector<double>(static_cast<std::size_t>(reps)));
  for (int j = 0; j < reps; ++j) {
    ModelPath path(spec, split_seed(seed, static_cast<std::uint64_t>(j)));
    double s = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      s += path.next();
      exponent[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(j)] = t * s;
    }
  }

  CgfSubadditivityCheck check;
  check.t = t;
  check.shift_bound = D;
  check.n_max = n_max;
  check.reps = reps;
  check.log_mgf.resize(static_cast<std::size_t>(n_max));
  check.se_log.resize(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const std::vector<double>& e = exponent[static_cast<std::size_t>(n - 1)];
    const double max_e = *std::max_element(e.begin(), e.end());
    double s1 = 0.0, s2 = 0.0;
    for (double v : e) {
      const double y = std::exp(v - max_e);
      s1 += y;
      s2 += y * y;
    }
    const double m1 = s1 / static_cast<double>(reps);
    const double var = std::max(0.0, s2 / static_cast<double>(reps) - m1 * m1);
    check.log_mgf[static_cast<std::size_t>(n - 1)] = max_e + std::log(m1);
    // Delta method: se(log mean) = sd / (mean sqrt(reps)); scale factors from
    // the max-subtraction cancel in the ratio.
    check.se_log[static_cast<std::size_t>(n - 1)] =
        std::sqrt(var / static_cast<double>(reps)) / m1;
  }

  double best_score = -std::numeric_limits<double>::infinity();
  for (int n = 1; n < n_max; ++n) {
    for (int m = n; n + m <= n_max; ++m) {
      const double margin = check.log_mgf[static_cast<std::size_t>(n + m - 1)] -
                            check.log_mgf[static_cast<std::size_t>(n - 1)] -
                            check.log_mgf[static_cast<std::size_t>(m - 1)] -
                            4.0 * t * D;
      const double noise = 3.0 * (check.se_log[static_cast<std::size_t>(n + m - 1)] +
                                  check.se_log[static_cast<std::size_t>(n - 1)] +
                                  check.se_log[static_cast<std::size_t>(m - 1)]);
      const double score = margin - noise;
      if (score > best_score) {
        best_score = score;
        check.worst_n = n;
        check.worst_m = m;
        check.worst_margin = margin;
        check.worst_noise = noise;
      }
    }
  }
  check.violated = check.worst_margin > check.worst_noise;
  return check;
}

}  // namespace ruinadjust
