// ruin-adjust: command-line front end for the adjustment-coefficient library.
// Subcommands: simulate | estimate | select-r | mc-study | ruin | curve |
// subadd-check. Every command is deterministic given its full flag set; the
// master seed defaults to a fixed constant and can come from the command
// line, a --config JSON file, or the RUIN_ADJUST_SEED environment variable
// (in that order of precedence).
//
// Exit statuses: 0 success, 2 usage/validation, 3 estimation failure
// (including non-existence of a positive root), 4 file I/O, 1 unexpected.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "ruinadjust/adjust.hpp"
#include "ruinadjust/csv.hpp"
#include "ruinadjust/empirical.hpp"
#include "ruinadjust/errors.hpp"
#include "ruinadjust/processes.hpp"
#include "ruinadjust/report.hpp"
#include "ruinadjust/rootfind.hpp"
#include "ruinadjust/ruin.hpp"
#include "ruinadjust/subadditive.hpp"

using namespace ruinadjust;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 123456789ULL;
constexpr double kUnsetDouble = std::numeric_limits<double>::quiet_NaN();

// The JSON report goes to stdout when no --out path is given, so pipelines
// can consume it directly; informational side notes go to stderr.
void emit_report(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    write_json_file(out_path, report);
    std::cout << "wrote " << out_path << '\n';
  }
}

void note_side_file(const std::string& path) {
  std::cerr << "wrote " << path << '\n';
}

// ---------------------------------------------------------------------------
// shared model flags

struct ModelFlags {
  std::string model = "iid";
  double a = 0.0;
  double theta = 1.2;
  double c = 1.0;
  int burn_in = -1;  // negative: use the model default
  double shift_scale = 0.7;
};

void add_model_flags(CLI::App* sub, ModelFlags& mf) {
  sub->add_option("--model", mf.model, "model kind: iid | ar1 | ma1 | nlar1")
      ->capture_default_str();
  sub->add_option("--a", mf.a, "dependence coefficient")->capture_default_str();
  sub->add_option("--theta", mf.theta, "exponential claim rate")->capture_default_str();
  sub->add_option("--c", mf.c, "premium collected per period")->capture_default_str();
  sub->add_option("--burn-in", mf.burn_in,
                  "discarded initial draws; negative picks the model default")
      ->capture_default_str();
  sub->add_option("--shift-scale", mf.shift_scale,
                  "innovation scale inside the nlar1 recursion")
      ->capture_default_str();
}

ModelSpec build_spec(const ModelFlags& mf) {
  ModelSpec spec;
  spec.kind = model_kind_from_string(mf.model);
  if (spec.kind == ModelKind::BERNOULLI_SHIFT)
    throw SpecError(
        "model 'bernoulli_shift' needs a programmatic kernel and is only "
        "reachable through the library API");
  spec.a = mf.a;
  spec.innovation.theta = mf.theta;
  spec.innovation.c = mf.c;
  spec.burn_in = mf.burn_in >= 0 ? mf.burn_in : default_burn_in(spec.kind);
  spec.shift_scale = mf.shift_scale;
  validate(spec);
  return spec;
}

CLI::Option* add_seed_flag(CLI::App* sub, std::uint64_t& seed) {
  return sub->add_option("--seed", seed, "master random seed")
      ->envname("RUIN_ADJUST_SEED")
      ->capture_default_str();
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || !std::isfinite(v))
      throw SpecError("bad grid entry '" + tok +
                      "': expected comma-separated finite numbers");
    out.push_back(v);
  }
  if (out.empty()) throw SpecError("--u-grid is empty");
  return out;
}

std::vector<double> uniform_grid(double t_max, int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] = t_max * i / (points - 1);
  grid.front() = 0.0;
  return grid;
}

// ---------------------------------------------------------------------------
// --config expansion
//
// `--config file.json` holds a flat object mirroring the flag namespace of
// the subcommand ({"n": 10000, "model": "ma1"}). The file is expanded into
// ordinary tokens injected right after the subcommand name, so values given
// explicitly on the command line come later and win (every option keeps the
// last value it sees).

std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& tok = args[i];
    if (tok == "--config") {
      if (i + 1 >= args.size()) throw SpecError("--config needs a file argument");
      config_path = args[++i];
    } else if (tok.rfind("--config=", 0) == 0) {
      config_path = tok.substr(9);
    } else {
      rest.push_back(tok);
    }
  }
  if (config_path.empty()) return rest;

  std::ifstream in(config_path);
  if (!in) throw IoError("cannot open config file: " + config_path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object())
    throw SpecError("config file must hold one flat JSON object of flag values");

  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);  // false simply omits the flag
    } else if (value.is_string()) {
      injected.push_back(flag);
      injected.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      injected.push_back(flag);
      injected.push_back(value.dump());
    } else {
      throw SpecError("config key '" + key +
                      "' must be a string, number, or boolean");
    }
  }

  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < rest.size() && !rest[i].empty() && rest[i][0] == '-')
    out.push_back(rest[i++]);
  if (i == rest.size())
    throw SpecError("--config requires a subcommand to apply to");
  out.push_back(rest[i++]);  // the subcommand name
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(i), rest.end());
  return out;
}

// ---------------------------------------------------------------------------
// command handlers

int cmd_simulate(const ModelFlags& mf, std::size_t n, std::uint64_t seed,
                 const std::string& out) {
  const ModelSpec spec = build_spec(mf);
  const Sample sample = simulate(spec, n, seed);
  write_sample_csv(out, sample.values);
  const std::string meta_path = out + ".meta.json";
  write_json_file(meta_path, simulate_meta_report(spec, n, seed, out));
  std::cout << "wrote " << out << " (" << sample.values.size() << " rows)\n";
  std::cout << "wrote " << meta_path << '\n';
  return 0;
}

json half_or_error(const Sample& sample, int r, bool& ok, double& w_out) {
  try {
    const AdjustmentEstimate est = estimate_w_d(sample, r);
    ok = true;
    w_out = est.w_hat;
    return estimate_to_json(est);
  } catch (const ExistenceError& e) {
    ok = false;
    return json{{"error", e.what()}, {"existence", existence_to_json(e.report)}};
  } catch (const EstimationError& e) {
    ok = false;
    return json{{"error", e.what()}};
  }
}

int cmd_estimate(const std::string& in, int r_flag, const std::string& curve_csv,
                 int curve_points, double curve_tmax, const std::string& out) {
  const Sample sample = read_sample_csv(in);
  const int r = r_flag > 0 ? r_flag : default_r(sample.values.size());

  bool ok_i = false;
  bool ok_d = false;
  double wi = 0.0;
  double wd = 0.0;
  const json ji = half_or_error(sample, 1, ok_i, wi);
  json jd;
  if (r == 1) {  // one fit, two views: the block estimate at r=1 is the plain one
    jd = ji;
    ok_d = ok_i;
    wd = wi;
  } else {
    jd = half_or_error(sample, r, ok_d, wd);
  }

  json report = estimate_report(ji, jd, sample.origin);

  if (!curve_csv.empty()) {
    double t_max = curve_tmax;
    std::string rule;
    if (t_max > 0.0) {
      rule = "[0, t_max], " + std::to_string(curve_points) + " points (t_max explicit)";
    } else {
      const double base = ok_i ? wi : (ok_d ? wd : 0.0);
      if (base > 0.0) {
        t_max = 1.5 * base;
        rule = "[0, 1.5*w_hat_i], " + std::to_string(curve_points) + " points";
      }
    }
    if (t_max > 0.0) {
      if (curve_points < 2) throw SpecError("--curve-points must be at least 2");
      const CgfCurve curve = cgf_curve(sample, r, uniform_grid(t_max, curve_points));
      write_curve_csv(curve_csv, curve);
      note_side_file(curve_csv);
      report["curve"] = curve_summary(curve, t_max, rule, curve_csv);
    } else {
      std::cerr << "curve skipped: no estimate to anchor the default grid; "
                   "pass --curve-t-max\n";
    }
  }

  emit_report(report, out);
  return (ok_i && ok_d) ? 0 : 3;
}

int cmd_select_r(const std::string& in, int r_max, const std::string& trace_csv,
                 const std::string& out) {
  const Sample sample = read_sample_csv(in);
  const RSelection sel = select_r(sample, r_max);
  if (!trace_csv.empty()) {
    write_trace_csv(trace_csv, sel);
    note_side_file(trace_csv);
  }
  if (sel.warning)
    std::cerr << "warning: no stable block length found; falling back to r=1\n";
  emit_report(select_r_report(sel, sample.origin), out);
  return 0;
}

int cmd_mc_study(const ModelFlags& mf, std::size_t n, int r_flag, int reps,
                 std::uint64_t seed, unsigned threads, double target_flag,
                 const std::string& reps_csv, const std::string& out) {
  const ModelSpec spec = build_spec(mf);
  const int r = r_flag > 0 ? r_flag : default_r(n);
  McStudy study = mc_study(spec, n, r, reps, seed, threads);
  if (std::isfinite(target_flag)) study.target = target_flag;
  if (!reps_csv.empty()) {
    write_replicates_csv(reps_csv, study.w_values);
    note_side_file(reps_csv);
  }
  if (study.failed > 0)
    std::cerr << "warning: " << study.failed << " of " << study.reps_requested
              << " replicates failed and were excluded\n";
  emit_report(mc_study_report(study, spec, n, r, seed), out);
  return 0;
}

int cmd_ruin(const ModelFlags& mf, const std::string& grid_text, long horizon,
             long paths, std::uint64_t seed, unsigned threads, double w_ref,
             double tol, const std::string& csv_out, const std::string& out) {
  const ModelSpec spec = build_spec(mf);
  const std::vector<double> grid = parse_grid(grid_text);
  const RuinStudy study = simulate_ruin(spec, grid, horizon, paths, seed, threads);
  json report = ruin_report(study, spec, seed);
  if (std::isfinite(w_ref)) {
    const LundbergCheck lc = lundberg_check(study, w_ref, tol);
    report["lundberg"] = json{{"w_ref", lc.w_ref},
                              {"tol", lc.tol},
                              {"abs_diff", lc.abs_diff},
                              {"pass", lc.pass}};
  }
  if (!csv_out.empty()) {
    write_ruin_csv(csv_out, study);
    note_side_file(csv_out);
  }
  emit_report(report, out);
  return 0;
}

int cmd_curve(const std::string& in, int r, double t_max_flag, int points,
              const std::string& csv_out, const std::string& out) {
  const Sample sample = read_sample_csv(in);
  if (points < 2) throw SpecError("--points must be at least 2");
  double t_max = t_max_flag;
  std::string rule;
  if (t_max > 0.0) {
    rule = "[0, t_max], " + std::to_string(points) + " points (t_max explicit)";
  } else {
    const AdjustmentEstimate wi = estimate_w_i(sample);
    t_max = 1.5 * wi.w_hat;
    rule = "[0, 1.5*w_hat_i], " + std::to_string(points) + " points";
  }
  const CgfCurve curve = cgf_curve(sample, r, uniform_grid(t_max, points));
  write_curve_csv(csv_out, curve);
  note_side_file(csv_out);
  emit_report(curve_report(curve, sample.origin, t_max, rule, csv_out), out);
  return 0;
}

int cmd_subadd_check(const ModelFlags& mf, double t, int n_max, int reps,
                     double shift_bound, std::uint64_t seed,
                     const std::string& out) {
  const ModelSpec spec = build_spec(mf);
  const CgfSubadditivityCheck chk =
      check_cgf_subadditivity(spec, t, n_max, seed, reps, shift_bound);
  if (chk.violated)
    std::cerr << "warning: factorization inequality violated beyond noise at n="
              << chk.worst_n << ", m=" << chk.worst_m << '\n';
  emit_report(subadd_check_report(chk, spec, seed), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ruin-adjust: estimate the adjustment (Lundberg) coefficient of a "
      "stationary claim-surplus process, simulate dependent claim data, and "
      "validate estimates against Monte Carlo ruin frequencies."};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  // ---- simulate ----
  ModelFlags sim_mf;
  std::size_t sim_n = 10000;
  std::uint64_t sim_seed = kDefaultSeed;
  std::string sim_out;
  CLI::App* sim = app.add_subcommand(
      "simulate", "draw a sample path and write it as a single-column CSV");
  add_model_flags(sim, sim_mf);
  sim->add_option("--n", sim_n, "sample length")->capture_default_str();
  add_seed_flag(sim, sim_seed);
  sim->add_option("--out", sim_out, "output CSV path (a .meta.json sidecar records provenance)")
      ->required();

  // ---- estimate ----
  std::string est_in;
  int est_r = 0;
  std::string est_curve_csv;
  int est_curve_points = 101;
  double est_curve_tmax = kUnsetDouble;
  std::string est_out;
  CLI::App* est = app.add_subcommand(
      "estimate",
      "estimate the adjustment coefficient from a CSV sample (independent-case "
      "and block variants side by side)");
  est->add_option("--in", est_in, "input CSV (header 'x', one value per row)")->required();
  est->add_option("--r", est_r, "block length; 0 picks the data-driven default")
      ->capture_default_str();
  est->add_option("--curve", est_curve_csv,
                  "also export the empirical scaled-cumulant curve to this CSV");
  est->add_option("--curve-points", est_curve_points, "curve grid size")
      ->capture_default_str();
  est->add_option("--curve-t-max", est_curve_tmax,
                  "curve grid upper end; unset anchors it at 1.5x the point estimate");
  est->add_option("--out", est_out, "report JSON path (default: stdout)");

  // ---- select-r ----
  std::string sel_in;
  int sel_r_max = 12;
  std::string sel_trace_csv;
  std::string sel_out;
  CLI::App* sel = app.add_subcommand(
      "select-r", "sweep block lengths and pick one by the monotone-prefix rule");
  sel->add_option("--in", sel_in, "input CSV (header 'x', one value per row)")->required();
  sel->add_option("--r-max", sel_r_max, "largest block length to try (>= 2)")
      ->capture_default_str();
  sel->add_option("--trace-out", sel_trace_csv, "write the r,w_hat,ci_lo,ci_hi trace CSV here");
  sel->add_option("--out", sel_out, "report JSON path (default: stdout)");

  // ---- mc-study ----
  ModelFlags mc_mf;
  std::size_t mc_n = 10000;
  int mc_r = 0;
  int mc_reps = 100;
  std::uint64_t mc_seed = kDefaultSeed;
  unsigned mc_threads = 0;
  double mc_target = kUnsetDouble;
  std::string mc_reps_csv;
  std::string mc_out;
  CLI::App* mc = app.add_subcommand(
      "mc-study", "distribution of the estimator across replicated samples");
  add_model_flags(mc, mc_mf);
  mc->add_option("--n", mc_n, "sample length per replicate")->capture_default_str();
  mc->add_option("--r", mc_r, "block length; 0 picks the data-driven default")
      ->capture_default_str();
  mc->add_option("--reps", mc_reps, "number of replicates")->capture_default_str();
  add_seed_flag(mc, mc_seed);
  mc->add_option("--threads", mc_threads, "worker threads; 0 = hardware concurrency")
      ->capture_default_str();
  mc->add_option("--target", mc_target,
                 "reference value to compare the replicate mean against "
                 "(default: the closed form when the model has one)");
  mc->add_option("--replicates-out", mc_reps_csv, "write every successful w_hat to this CSV");
  mc->add_option("--out", mc_out, "report JSON path (default: stdout)");

  // ---- ruin ----
  ModelFlags ruin_mf;
  std::string ruin_grid = "5,7.5,10,12.5,15,17.5,20";
  long ruin_horizon = 5000;
  long ruin_paths = 100000;
  std::uint64_t ruin_seed = kDefaultSeed;
  unsigned ruin_threads = 0;
  double ruin_w_ref = kUnsetDouble;
  double ruin_tol = 0.05;
  std::string ruin_csv;
  std::string ruin_out;
  CLI::App* ruin = app.add_subcommand(
      "ruin", "Monte Carlo first-passage frequencies over a reserve grid");
  add_model_flags(ruin, ruin_mf);
  ruin->add_option("--u-grid", ruin_grid, "comma-separated initial reserves, increasing")
      ->capture_default_str();
  ruin->add_option("--horizon", ruin_horizon, "steps per path")->capture_default_str();
  ruin->add_option("--paths", ruin_paths, "independent paths")->capture_default_str();
  add_seed_flag(ruin, ruin_seed);
  ruin->add_option("--threads", ruin_threads, "worker threads; 0 = hardware concurrency")
      ->capture_default_str();
  ruin->add_option("--w-ref", ruin_w_ref,
                   "reference decay coefficient; when set, the fitted slope is "
                   "checked against it");
  ruin->add_option("--tol", ruin_tol, "tolerance for the --w-ref comparison")
      ->capture_default_str();
  ruin->add_option("--csv-out", ruin_csv, "write u,ruin_freq,stderr,mean_ruin_time CSV here");
  ruin->add_option("--out", ruin_out, "report JSON path (default: stdout)");

  // ---- curve ----
  std::string curve_in;
  int curve_r = 1;
  double curve_tmax = kUnsetDouble;
  int curve_points = 101;
  std::string curve_csv;
  std::string curve_out;
  CLI::App* curve = app.add_subcommand(
      "curve", "export the empirical scaled-cumulant curve of a CSV sample");
  curve->add_option("--in", curve_in, "input CSV (header 'x', one value per row)")->required();
  curve->add_option("--r", curve_r, "block length")->capture_default_str();
  curve->add_option("--t-max", curve_tmax,
                    "grid upper end; unset anchors it at 1.5x the point estimate");
  curve->add_option("--points", curve_points, "grid size")->capture_default_str();
  curve->add_option("--csv-out", curve_csv, "output CSV for the curve values")->required();
  curve->add_option("--out", curve_out, "report JSON path (default: stdout)");

  // ---- subadd-check ----
  ModelFlags sub_mf;
  double sub_t = 0.5;
  int sub_n_max = 16;
  int sub_reps = 4000;
  double sub_shift_bound = -1.0;
  std::uint64_t sub_seed = kDefaultSeed;
  std::string sub_out;
  CLI::App* sub = app.add_subcommand(
      "subadd-check",
      "Monte Carlo check that exponential moments of prefix sums factorize up "
      "to the declared allowance");
  add_model_flags(sub, sub_mf);
  sub->add_option("--t", sub_t, "evaluation point of the exponential moment")
      ->capture_default_str();
  sub->add_option("--n-max", sub_n_max, "largest prefix length")->capture_default_str();
  sub->add_option("--reps", sub_reps, "replicated paths per estimate")->capture_default_str();
  sub->add_option("--shift-bound", sub_shift_bound,
                  "allowance D in the factorization; negative picks the model default")
      ->capture_default_str();
  add_seed_flag(sub, sub_seed);
  sub->add_option("--out", sub_out, "report JSON path (default: stdout)");

  // ---- parse, with --config expanded into ordinary tokens first ----
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config(std::move(args));
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  }

  std::vector<const char*> cargv;
  cargv.reserve(args.size() + 1);
  cargv.push_back("ruin-adjust");
  for (const std::string& s : args) cargv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help / --version: print and succeed
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_mf, sim_n, sim_seed, sim_out);
    if (est->parsed())
      return cmd_estimate(est_in, est_r, est_curve_csv, est_curve_points,
                          est_curve_tmax, est_out);
    if (sel->parsed()) return cmd_select_r(sel_in, sel_r_max, sel_trace_csv, sel_out);
    if (mc->parsed())
      return cmd_mc_study(mc_mf, mc_n, mc_r, mc_reps, mc_seed, mc_threads,
                          mc_target, mc_reps_csv, mc_out);
    if (ruin->parsed())
      return cmd_ruin(ruin_mf, ruin_grid, ruin_horizon, ruin_paths, ruin_seed,
                      ruin_threads, ruin_w_ref, ruin_tol, ruin_csv, ruin_out);
    if (curve->parsed())
      return cmd_curve(curve_in, curve_r, curve_tmax, curve_points, curve_csv,
                       curve_out);
    if (sub->parsed())
      return cmd_subadd_check(sub_mf, sub_t, sub_n_max, sub_reps,
                              sub_shift_bound, sub_seed, sub_out);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const EstimationError& e) {
    std::cerr << "estimation error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 2;  // unreachable: require_subcommand guarantees one branch above
}
