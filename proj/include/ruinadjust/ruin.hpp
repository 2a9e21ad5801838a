#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ruinadjust/processes.hpp"

namespace ruinadjust {

// Monte Carlo first-passage study of the claim surplus Y_n = X_1 + ... + X_n
// against a grid of initial reserves.
struct RuinStudy {
  std::vector<double> u_grid;
  long horizon = 0;
  long paths = 0;
  std::vector<long> ruin_count;        // paths with max_n Y_n > u
  std::vector<double> ruin_freq;       // ruin_count / paths
  std::vector<double> freq_stderr;     // binomial stderr sqrt(p(1-p)/paths)
  std::vector<double> ruin_time_mean;  // mean first-passage time; NaN if no ruin
  // Mean of e^{w (Y_T - u)} over ruined paths (the overshoot factor in the
  // exact ruin formula), filled for the IID model only; NaN elsewhere.
  std::vector<double> overshoot_factor;
  double overshoot_w = 0.0;            // the w used for overshoot_factor (0 if unused)
  double slope_fit = 0.0;              // LS slope of log(ruin_freq) on u; NaN if undefined
  double slope_stderr = 0.0;           // NaN when fewer than 3 fit points
  bool slope_defined = false;
  int slope_points = 0;                // u values entering the fit
  // Fraction of paths that never crossed the largest reserve and ended below
  // zero: still solvent but drifting down (finite-horizon truncation bias).
  double solvent_drifting_frac = 0.0;
};

// Runs `paths` independent surplus paths of length `horizon`; path p uses a
// seed split deterministically from `seed`, so results do not depend on the
// thread count. u_grid must be non-negative strictly increasing; paths >= 100.
// The slope is fitted over u values whose ruin count is at least 25.
// threads = 0 uses the hardware concurrency.
RuinStudy simulate_ruin(const ModelSpec& spec, const std::vector<double>& u_grid,
                        long horizon, long paths, std::uint64_t seed,
                        unsigned threads = 0);

struct LundbergCheck {
  double w_ref = 0.0;
  double tol = 0.0;
  double abs_diff = 0.0;  // | -slope_fit - w_ref |
  bool pass = false;
};

// Compares the fitted exponential decay rate against a reference coefficient.
// Throws EstimationError when the study has no defined slope.
LundbergCheck lundberg_check(const RuinStudy& study, double w_ref, double tol);

}  // namespace ruinadjust
