#include "ruinadjust/report.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "ruinadjust/errors.hpp"

namespace ruinadjust {

using nlohmann::json;

namespace {

// Non-finite doubles have no JSON representation and would serialize as null
// anyway; converting up front keeps the in-memory report identical to its
// file form, so schema checks see what readers will see.
json finite_or_null(double x) {
  if (std::isfinite(x)) return json(x);
  return json(nullptr);
}

json finite_or_null(const std::vector<double>& xs) {
  json arr = json::array();
  for (double x : xs) arr.push_back(finite_or_null(x));
  return arr;
}

json model_to_json(const ModelSpec& spec) {
  return json{{"kind", to_string(spec.kind)},
              {"a", spec.a},
              {"theta", spec.innovation.theta},
              {"c", spec.innovation.c},
              {"burn_in", spec.burn_in},
              {"shift_scale", spec.shift_scale}};
}

json header(const char* report_type) {
  return json{{"schema_version", kSchemaVersion}, {"report_type", report_type}};
}

}  // namespace

json existence_to_json(const ExistenceReport& report) {
  return json{{"mean_negative", report.mean_negative},
              {"has_positive", report.has_positive},
              {"abscissa_note", report.abscissa_note == AbscissaNote::ANALYTIC_A
                                    ? "analytic_abscissa"
                                    : "finite_sum_infinite_abscissa"},
              {"verdict", report.verdict}};
}

json estimate_to_json(const AdjustmentEstimate& est) {
  return json{{"w_hat", finite_or_null(est.w_hat)},
              {"r", est.r},
              {"k_effective", est.k_effective},
              {"k_blocks", est.k_blocks},
              {"gamma2", finite_or_null(est.gamma2)},
              {"denom", finite_or_null(est.denom)},
              {"ci95", json::array({finite_or_null(est.ci_lo), finite_or_null(est.ci_hi)})},
              {"ci_heuristic", est.ci_heuristic},
              {"existence", existence_to_json(est.existence)},
              {"residual", finite_or_null(est.residual)},
              {"solver_iterations", est.solver_iterations}};
}

json estimate_report(const json& w_i_json, const json& w_d_json,
                     const std::string& input_origin) {
  json j = header("estimate");
  j["input"] = input_origin;
  j["w_i"] = w_i_json;
  j["w_d"] = w_d_json;
  return j;
}

json select_r_report(const RSelection& selection, const std::string& input_origin) {
  json j = header("select_r");
  j["input"] = input_origin;
  j["chosen_r"] = selection.chosen_r;
  j["warning"] = selection.warning;
  j["trace"] = json{{"slack", finite_or_null(selection.trace.slack)},
                    {"direction", selection.trace.direction},
                    {"break_r", selection.trace.break_r}};
  json rows = json::array();
  for (const REntry& e : selection.w_by_r) {
    json row{{"r", e.r}, {"ok", e.ok}};
    if (e.ok) {
      row["w_hat"] = finite_or_null(e.est.w_hat);
      row["ci95"] = json::array({finite_or_null(e.est.ci_lo), finite_or_null(e.est.ci_hi)});
    } else {
      row["error"] = e.error;
    }
    rows.push_back(std::move(row));
  }
  j["w_by_r"] = std::move(rows);
  return j;
}

json mc_study_report(const McStudy& study, const ModelSpec& spec, std::size_t n,
                     int r, std::uint64_t master_seed) {
  json j = header("mc_study");
  j["model"] = model_to_json(spec);
  j["n"] = n;
  j["r"] = r;
  j["seed"] = master_seed;
  j["reps"] = study.reps_requested;
  j["reps_completed"] = study.reps_completed;
  j["failed"] = study.failed;
  j["mean_w"] = finite_or_null(study.mean_w);
  j["sd_w"] = finite_or_null(study.sd_w);
  j["skewness"] = finite_or_null(study.skewness);
  j["excess_kurtosis"] = finite_or_null(study.excess_kurtosis);
  j["target"] = finite_or_null(study.target);
  j["abs_diff_target"] = std::isnan(study.target) || std::isnan(study.mean_w)
                             ? json(nullptr)
                             : json(std::abs(study.mean_w - study.target));
  j["wide_ci"] = study.wide_ci;
  return j;
}

json ruin_report(const RuinStudy& study, const ModelSpec& spec, std::uint64_t seed) {
  json j = header("ruin");
  j["model"] = model_to_json(spec);
  j["seed"] = seed;
  j["horizon"] = study.horizon;
  j["paths"] = study.paths;
  j["u_grid"] = study.u_grid;
  j["ruin_freq"] = study.ruin_freq;
  j["freq_stderr"] = study.freq_stderr;
  j["ruin_time_mean"] = finite_or_null(study.ruin_time_mean);
  j["overshoot_factor"] = finite_or_null(study.overshoot_factor);
  j["overshoot_w"] = study.overshoot_w;
  j["slope_fit"] = finite_or_null(study.slope_fit);
  j["slope_stderr"] = finite_or_null(study.slope_stderr);
  j["slope_defined"] = study.slope_defined;
  j["slope_points"] = study.slope_points;
  j["solvent_drifting_frac"] = study.solvent_drifting_frac;
  return j;
}

json subadd_check_report(const CgfSubadditivityCheck& check, const ModelSpec& spec,
                         std::uint64_t seed) {
  json j = header("subadd_check");
  j["model"] = model_to_json(spec);
  j["seed"] = seed;
  j["t"] = check.t;
  j["shift_bound"] = check.shift_bound;
  j["n_max"] = check.n_max;
  j["reps"] = check.reps;
  j["log_mgf"] = finite_or_null(check.log_mgf);
  j["se_log"] = finite_or_null(check.se_log);
  j["worst_n"] = check.worst_n;
  j["worst_m"] = check.worst_m;
  j["worst_margin"] = finite_or_null(check.worst_margin);
  j["worst_noise"] = finite_or_null(check.worst_noise);
  j["violated"] = check.violated;
  return j;
}

json curve_summary(const CgfCurve& curve, double t_max,
                   const std::string& grid_rule, const std::string& csv_path) {
  std::size_t bounded_points = 0;
  for (bool b : curve.bounded)
    if (b) ++bounded_points;
  return json{{"r", curve.r},
              {"k_effective", curve.k_effective},
              {"t_max", t_max},
              {"points", curve.t_grid.size()},
              {"bounded_points", bounded_points},
              {"grid_rule", grid_rule},
              {"csv", csv_path}};
}

json curve_report(const CgfCurve& curve, const std::string& input_origin,
                  double t_max, const std::string& grid_rule,
                  const std::string& csv_path) {
  json j = header("curve");
  j["input"] = input_origin;
  j.update(curve_summary(curve, t_max, grid_rule, csv_path));
  return j;
}

json simulate_meta_report(const ModelSpec& spec, std::size_t n, std::uint64_t seed,
                          const std::string& csv_path) {
  json j = header("simulate_meta");
  j["model"] = model_to_json(spec);
  j["n"] = n;
  j["seed"] = seed;
  j["csv"] = csv_path;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace ruinadjust
