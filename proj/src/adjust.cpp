#include "ruinadjust/adjust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "ruinadjust/stats.hpp"

namespace ruinadjust {

namespace {

constexpr double kLogDoubleMax = 709.782712893384;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

VariancePlugin variance_plugin(const std::vector<double>& z_values, double t,
                               int max_lag) {
  if (z_values.empty()) throw SpecError("variance_plugin: empty series");
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw SpecError("variance_plugin: t must be positive and finite");
  }
  const std::size_t k = z_values.size();

  int L;
  if (max_lag < 0) {
    // floor(k^(1/3)) computed exactly in integers.
    L = static_cast<int>(std::cbrt(static_cast<double>(k)));
    while (static_cast<std::size_t>(L + 1) * (L + 1) * (L + 1) <= k) ++L;
    while (L > 0 && static_cast<std::size_t>(L) * L * L > k) --L;
  } else {
    L = max_lag;
  }
  if (static_cast<std::size_t>(L) >= k) L = static_cast<int>(k) - 1;

  std::vector<double> y(k);
  double denom = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double e = t * z_values[i];
    if (e > kLogDoubleMax) throw UnboundedMgfError(t);
    y[i] = std::exp(e);
    denom += z_values[i] * y[i];
  }
  denom /= static_cast<double>(k);

  double mean_y = 0.0;
  for (double v : y) mean_y += v;
  mean_y /= static_cast<double>(k);

  // Bartlett-weighted long-run variance: C_0 + 2 sum_j (1 - j/(L+1)) C_j with
  // biased autocovariances; the kernel keeps the estimate non-negative up to
  // rounding, which the final clamp absorbs.
  double gamma2 = 0.0;
  for (int j = 0; j <= L; ++j) {
    double cj = 0.0;
    for (std::size_t i = 0; i + static_cast<std::size_t>(j) < k; ++i) {
      cj += (y[i] - mean_y) * (y[i + static_cast<std::size_t>(j)] - mean_y);
    }
    cj /= static_cast<double>(k);
    const double weight = 1.0 - static_cast<double>(j) / static_cast<double>(L + 1);
    gamma2 += (j == 0 ? 1.0 : 2.0) * weight * cj;
  }
  gamma2 = std::max(gamma2, 0.0);

  VariancePlugin plug;
  plug.gamma2 = gamma2;
  plug.denom = denom;
  plug.lag_window = L;
  return plug;
}

AdjustmentEstimate estimate_w_d(const Sample& sample, int r) {
  const std::vector<double> z = block_sums(sample, r);

  AdjustmentEstimate est;
  est.r = r;
  est.k_blocks = z.size();
  est.k_effective = z.size() * static_cast<std::size_t>(r);
  est.existence = check_existence(z);
  if (!est.existence.verdict) {
    throw ExistenceError(est.existence);
  }

  // The empirical CGF grows like t * max(z) for large t, so its root sits
  // well below the point where e^{t max(z)} overflows; that point is a
  // natural probe scale.
  const double z_max = *std::max_element(z.begin(), z.end());
  const double upper_hint = kLogDoubleMax / z_max;
  auto objective = [&](double t) {
    return empirical_log_mgf(z, t) / static_cast<double>(r);
  };
  const RootResult root = solve_positive_root(objective, upper_hint, 1e-9);
  est.w_hat = root.root;
  est.residual = root.residual;
  est.solver_iterations = root.iterations;

  const VariancePlugin plug = variance_plugin(z, est.w_hat);
  est.gamma2 = plug.gamma2;
  est.denom = plug.denom;
  const double half = 1.96 * std::sqrt(plug.gamma2) /
                      (plug.denom * std::sqrt(static_cast<double>(est.k_blocks)));
  est.ci_lo = est.w_hat - half;
  est.ci_hi = est.w_hat + half;
  est.ci_heuristic = r > 1;
  return est;
}

AdjustmentEstimate estimate_w_i(const Sample& sample) { return estimate_w_d(sample, 1); }

int default_r(std::size_t k) {
  if (k < 2) throw SpecError("default_r: sample too short");
  const int by_log = static_cast<int>(std::floor(0.75 * std::log(static_cast<double>(k))));
  return std::max(1, std::min(6, by_log));
}

RSelection select_r(const Sample& sample, int r_max) {
  if (r_max < 2) throw SpecError("select_r: r_max must be at least 2");
  make_block_config(sample.values.size(), r_max);  // enough data at the largest r

  RSelection sel;
  sel.w_by_r.reserve(static_cast<std::size_t>(r_max));
  for (int r = 1; r <= r_max; ++r) {
    REntry entry;
    entry.r = r;
    try {
      entry.est = estimate_w_d(sample, r);
      entry.ok = true;
    } catch (const EstimationError& e) {
      if (r == 1) throw;  // nothing to select from
      entry.ok = false;
      entry.error = e.what();
    }
    sel.w_by_r.push_back(std::move(entry));
  }

  // Slack: a quarter of the median CI half-width across successful fits.
  std::vector<double> half_widths;
  for (const REntry& e : sel.w_by_r) {
    if (e.ok) half_widths.push_back(0.5 * (e.est.ci_hi - e.est.ci_lo));
  }
  const double slack = 0.25 * median(half_widths);
  sel.trace.slack = slack;

  // Longest prefix of consecutive successful fits.
  int prefix_len = 0;
  for (const REntry& e : sel.w_by_r) {
    if (!e.ok) break;
    ++prefix_len;
  }

  // Longest monotone run from r = 1 in each direction, allowing the slack.
  int len_down = 1, len_up = 1;
  bool down_alive = true, up_alive = true;
  for (int i = 1; i < prefix_len; ++i) {
    const double diff = sel.w_by_r[static_cast<std::size_t>(i)].est.w_hat -
                        sel.w_by_r[static_cast<std::size_t>(i - 1)].est.w_hat;
    if (down_alive && diff <= slack) {
      ++len_down;
    } else {
      down_alive = false;
    }
    if (up_alive && diff >= -slack) {
      ++len_up;
    } else {
      up_alive = false;
    }
    if (!down_alive && !up_alive) break;
  }

  sel.chosen_r = std::max(len_down, len_up);
  sel.trace.direction = len_down > len_up ? -1 : (len_up > len_down ? +1 : 0);
  sel.trace.break_r = sel.chosen_r < r_max ? sel.chosen_r + 1 : 0;
  sel.warning = sel.chosen_r == 1;
  return sel;
}

std::vector<ConvergenceRow> convergence_study(const ModelSpec& spec, std::size_t n,
                                              const std::vector<int>& r_grid,
                                              std::uint64_t seed) {
  validate(spec);
  if (r_grid.empty()) throw SpecError("convergence_study: empty r grid");
  const Sample sample = simulate(spec, n, seed);

  std::vector<ConvergenceRow> rows;
  rows.reserve(r_grid.size());
  for (int r : r_grid) {
    ConvergenceRow row;
    row.r = r;
    switch (spec.kind) {
      case ModelKind::IID:
        row.w_analytic = analytic_w_iid(spec.innovation);
        break;
      case ModelKind::MA1:
        row.w_analytic = analytic_w_r_ma1(spec.innovation, spec.a, r);
        break;
      default:
        row.w_analytic = quiet_nan();
        break;
    }
    try {
      row.w_hat = estimate_w_d(sample, r).w_hat;
      row.ok = true;
    } catch (const EstimationError& e) {
      row.ok = false;
      row.w_hat = quiet_nan();
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

McStudy mc_study(const ModelSpec& spec, std::size_t n, int r, int reps,
                 std::uint64_t master_seed, unsigned threads) {
  validate(spec);
  if (reps < 2) throw SpecError("mc_study: reps must be at least 2");
  if (r < 1) throw SpecError("mc_study: r must be at least 1");
  make_block_config(n, r);

  struct Slot {
    bool ok = false;
    double w = 0.0;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(reps));

  unsigned n_threads = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(reps));

  auto worker = [&](unsigned first) {
    for (int i = static_cast<int>(first); i < reps; i += static_cast<int>(n_threads)) {
      const std::uint64_t seed = split_seed(master_seed, static_cast<std::uint64_t>(i));
      try {
        const Sample sample = simulate(spec, n, seed);
        slots[static_cast<std::size_t>(i)].w = estimate_w_d(sample, r).w_hat;
        slots[static_cast<std::size_t>(i)].ok = true;
      } catch (const EstimationError&) {
        slots[static_cast<std::size_t>(i)].ok = false;
      }
    }
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned th = 0; th < n_threads; ++th) pool.emplace_back(worker, th);
    for (auto& th : pool) th.join();
  }

  McStudy study;
  study.reps_requested = reps;
  for (const Slot& s : slots) {
    if (s.ok) study.w_values.push_back(s.w);
  }
  study.reps_completed = static_cast<int>(study.w_values.size());
  study.failed = reps - study.reps_completed;
  study.wide_ci = study.reps_completed < 10;

  switch (spec.kind) {
    case ModelKind::IID:
      study.target = analytic_w_iid(spec.innovation);
      break;
    case ModelKind::AR1:
      study.target = analytic_w_ar1(spec.innovation, spec.a);
      break;
    case ModelKind::MA1:
      study.target = analytic_w_ma1(spec.innovation, spec.a);
      break;
    default:
      study.target = quiet_nan();
      break;
  }

  if (study.reps_completed >= 2) {
    study.mean_w = mean(study.w_values);
    study.sd_w = sample_sd(study.w_values);
  } else {
    study.mean_w = study.reps_completed == 1 ? study.w_values.front() : quiet_nan();
    study.sd_w = quiet_nan();
  }
  study.skewness = study.reps_completed >= 3 ? skewness(study.w_values) : quiet_nan();
  study.excess_kurtosis =
      study.reps_completed >= 4 ? excess_kurtosis(study.w_values) : quiet_nan();
  return study;
}

}  // namespace ruinadjust
