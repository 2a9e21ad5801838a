#pragma once

#include <cstddef>
#include <vector>

#include "ruinadjust/errors.hpp"
#include "ruinadjust/processes.hpp"

namespace ruinadjust {

// Partition of a length-k sample into consecutive non-overlapping blocks of
// length r; the trailing k - r*k_blocks observations are discarded.
struct BlockConfig {
  int r = 1;
  std::size_t k_blocks = 0;
};

// Validates r >= 1 and floor(k/r) >= 2; throws SpecError / EstimationError.
BlockConfig make_block_config(std::size_t k, int r);

// Z_i = X_{i*r+1} + ... + X_{i*r+r} for i = 0..k_blocks-1.
std::vector<double> block_sums(const Sample& sample, int r);

// (1/n) sum e^{t x_i}, stabilized by factoring out the largest exponent.
// t = 0 short-circuits to exactly 1. Throws UnboundedMgfError when the
// stabilized mean still overflows double range.
double empirical_mgf(const std::vector<double>& values, double t);

// log of empirical_mgf via log-mean-exp; exactly 0 at t = 0.
double empirical_log_mgf(const std::vector<double>& values, double t);

// Empirical scaled cumulant curve: values[j] = (1/r) log M_hat(t_j) over the
// block sums of length r (r = 1 reduces to the plain log empirical MGF).
struct CgfCurve {
  std::vector<double> t_grid;
  std::vector<double> values;   // +inf where unbounded
  std::vector<bool> bounded;    // false where the stabilized mean overflowed
  int r = 1;
  std::size_t k_effective = 0;  // observations used: r * k_blocks
};

// Grid must be increasing and start at 0. Unbounded grid points are marked
// and excluded from the convexity invariant.
CgfCurve cgf_curve(const Sample& sample, int r, const std::vector<double>& t_grid);

// Biased (divide-by-n) autocovariances of `values` at lags 0..L.
struct CovDecay {
  std::vector<int> lags;
  std::vector<double> coeffs;
};

// Requires L < length/4.
CovDecay cov_decay(const std::vector<double>& values, int L);

// Empirical check of the second-moment inequality
//   E(S_n^2) <= 2 n sum_{j=0}^{n-1} C_j
// with S_n estimated from non-overlapping batch sums of length `batch` and
// C_j the biased autocovariances of the centered series.
struct SecondMomentBound {
  double lhs = 0.0;   // mean of squared batch sums
  double rhs = 0.0;   // 2 * batch * sum of autocovariances over lags 0..batch-1
  bool holds = false; // lhs <= rhs * 1.1
  int batch = 0;
};

SecondMomentBound second_moment_bound_check(const std::vector<double>& values, int L);

}  // namespace ruinadjust
