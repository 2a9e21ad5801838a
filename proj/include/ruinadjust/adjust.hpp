#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ruinadjust/empirical.hpp"
#include "ruinadjust/processes.hpp"
#include "ruinadjust/rootfind.hpp"

namespace ruinadjust {

// Point estimate of the adjustment coefficient from one sample, with the
// plug-in central-limit machinery. r = 1 is the independent-case estimator;
// r > 1 estimates from non-overlapping block sums.
struct AdjustmentEstimate {
  double w_hat = 0.0;
  int r = 1;
  std::size_t k_effective = 0;  // observations used: r * k_blocks
  std::size_t k_blocks = 0;     // number of block sums behind the root
  double gamma2 = 0.0;          // long-run variance of e^{w_hat * Z}
  double denom = 0.0;           // (1/k) sum Z_i e^{w_hat * Z_i}
  double ci_lo = 0.0;           // w_hat - 1.96 sqrt(gamma2) / (denom sqrt(k_blocks))
  double ci_hi = 0.0;
  bool ci_heuristic = false;    // true for r > 1: normal CI is per-fixed-r only
  ExistenceReport existence{};
  double residual = 0.0;        // block CGF evaluated at w_hat
  int solver_iterations = 0;
};

// Long-run variance and CLT denominator of the series e^{t z_i}.
struct VariancePlugin {
  double gamma2 = 0.0;
  double denom = 0.0;
  int lag_window = 0;  // L actually used
};

// Bartlett-weighted long-run variance with window L = floor(k^(1/3)) when
// max_lag < 0, else the caller's max_lag (0 = plain sample variance).
// gamma2 is clamped at 0. Throws UnboundedMgfError when e^{t z} overflows.
VariancePlugin variance_plugin(const std::vector<double>& z_values, double t,
                               int max_lag = -1);

// Root of the empirical one-step CGF (r = 1). Throws ExistenceError when the
// sample violates the existence conditions; solver failures propagate.
AdjustmentEstimate estimate_w_i(const Sample& sample);

// Root of the (1/r)-scaled empirical block CGF. estimate_w_d(sample, 1) is
// estimate_w_i(sample) by construction (same code path).
AdjustmentEstimate estimate_w_d(const Sample& sample, int r);

// Block length used when the caller does not pick one: min(6, 0.75 ln k),
// at least 1. Grows slower than ln k; equals 6 at k = 10000.
int default_r(std::size_t k);

// Diagnostics of the monotone-prefix rule behind select_r.
struct RunTrace {
  double slack = 0.0;  // 0.25 x median CI half-width across successful fits
  int direction = 0;   // -1 decreasing run, +1 increasing, 0 flat/ambiguous
  int break_r = 0;     // first r outside the chosen run; 0 if the grid ran out
};

// Per-r outcome inside a selection sweep: either an estimate or the reason
// the fit failed at that block length.
struct REntry {
  int r = 0;
  bool ok = false;
  AdjustmentEstimate est{};
  std::string error;
};

struct RSelection {
  std::vector<REntry> w_by_r;  // one entry per r = 1..r_max
  int chosen_r = 1;
  bool warning = false;        // the run broke immediately; falling back to r=1
  RunTrace trace{};
};

// Computes the estimate for every r in 1..r_max and picks the largest r whose
// prefix (w_1..w_r) moves in one direction up to the slack. A failed fit ends
// the run; a failure at r = 1 rethrows since nothing can be selected.
RSelection select_r(const Sample& sample, int r_max);

// One row of a block-length convergence table; w_analytic is NaN when no
// closed form is available for the model.
struct ConvergenceRow {
  int r = 0;
  bool ok = false;
  double w_hat = 0.0;
  double w_analytic = 0.0;
  std::string error;
};

std::vector<ConvergenceRow> convergence_study(const ModelSpec& spec, std::size_t n,
                                              const std::vector<int>& r_grid,
                                              std::uint64_t seed);

// Replicated estimation summary: distribution of w_hat across independent
// samples of the same model.
struct McStudy {
  int reps_requested = 0;
  int reps_completed = 0;
  int failed = 0;
  std::vector<double> w_values;  // successful replicates, replicate order
  double mean_w = 0.0;
  double sd_w = 0.0;
  double skewness = 0.0;         // NaN when too few replicates
  double excess_kurtosis = 0.0;  // NaN when too few replicates
  double target = 0.0;           // NaN when no analytic value is known
  bool wide_ci = false;          // fewer than 10 completed replicates
};

// Replicate i simulates with seed split from master_seed by the documented
// splitting rule, so runs are reproducible and parallelizable. threads = 0
// uses the hardware concurrency.
McStudy mc_study(const ModelSpec& spec, std::size_t n, int r, int reps,
                 std::uint64_t master_seed, unsigned threads = 0);

}  // namespace ruinadjust
