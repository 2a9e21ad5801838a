#include "ruinadjust/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ruinadjust {

namespace {

constexpr double kLogDoubleMax = 709.782712893384;  // log(DBL_MAX), rounded down

// log of (1/n) sum e^{t x_i}, stabilized by subtracting the max exponent.
// Returns +inf when the value exceeds double range even after stabilization.
double log_mean_exp(const std::vector<double>& values, double t) {
  if (values.empty()) throw SpecError("empirical moments need a nonempty sequence");
  if (t == 0.0) return 0.0;
  double max_e = -std::numeric_limits<double>::infinity();
  for (double x : values) max_e = std::max(max_e, t * x);
  double acc = 0.0;
  for (double x : values) acc += std::exp(t * x - max_e);
  const double out = max_e + std::log(acc / static_cast<double>(values.size()));
  return out;  // +inf only if max_e itself overflowed upstream arithmetic
}

}  // namespace

BlockConfig make_block_config(std::size_t k, int r) {
  if (r < 1) throw SpecError("block length r must be at least 1");
  BlockConfig cfg;
  cfg.r = r;
  cfg.k_blocks = k / static_cast<std::size_t>(r);
  if (cfg.k_blocks < 2) {
    throw EstimationError("need at least 2 complete blocks: k=" + std::to_string(k) +
                          ", r=" + std::to_string(r));
  }
  return cfg;
}

std::vector<double> block_sums(const Sample& sample, int r) {
  const BlockConfig cfg = make_block_config(sample.values.size(), r);
  std::vector<double> z(cfg.k_blocks);
  for (std::size_t i = 0; i < cfg.k_blocks; ++i) {
    double s = 0.0;
    const std::size_t base = i * static_cast<std::size_t>(r);
    for (int j = 0; j < r; ++j) s += sample.values[base + static_cast<std::size_t>(j)];
    z[i] = s;
  }
  return z;
}

double empirical_mgf(const std::vector<double>& values, double t) {
  if (t == 0.0) {
    if (values.empty()) throw SpecError("empirical moments need a nonempty sequence");
    return 1.0;
  }
  const double lme = log_mean_exp(values, t);
  if (lme > kLogDoubleMax) throw UnboundedMgfError(t);
  return std::exp(lme);
}

double empirical_log_mgf(const std::vector<double>& values, double t) {
  const double lme = log_mean_exp(values, t);
  if (lme > kLogDoubleMax) throw UnboundedMgfError(t);
  return lme;
}

CgfCurve cgf_curve(const Sample& sample, int r, const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw SpecError("t_grid must be nonempty");
  if (t_grid.front() != 0.0) throw SpecError("t_grid must start at 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw SpecError("t_grid must be strictly increasing");
  }
  const std::vector<double> z = block_sums(sample, r);

  CgfCurve curve;
  curve.t_grid = t_grid;
  curve.r = r;
  curve.k_effective = z.size() * static_cast<std::size_t>(r);
  curve.values.resize(t_grid.size());
  curve.bounded.resize(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double lme = log_mean_exp(z, t_grid[i]);
    if (lme > kLogDoubleMax) {
      curve.values[i] = std::numeric_limits<double>::infinity();
      curve.bounded[i] = false;
    } else {
      curve.values[i] = lme / static_cast<double>(r);
      curve.bounded[i] = true;
    }
  }
  return curve;
}

CovDecay cov_decay(const std::vector<double>& values, int L) {
  const std::size_t n = values.size();
  if (L < 0) throw SpecError("max lag must be non-negative");
  if (static_cast<std::size_t>(L) * 4 >= n) {
    throw SpecError("max lag must be below a quarter of the series length");
  }
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                      static_cast<double>(n);
  CovDecay decay;
  decay.lags.resize(static_cast<std::size_t>(L) + 1);
  decay.coeffs.resize(static_cast<std::size_t>(L) + 1);
  for (int j = 0; j <= L; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i + static_cast<std::size_t>(j) < n; ++i) {
      acc += (values[i] - mean) * (values[i + static_cast<std::size_t>(j)] - mean);
    }
    decay.lags[static_cast<std::size_t>(j)] = j;
    decay.coeffs[static_cast<std::size_t>(j)] = acc / static_cast<double>(n);
  }
  return decay;
}

SecondMomentBound second_moment_bound_check(const std::vector<double>& values, int L) {
  const CovDecay decay = cov_decay(values, L);  // validates L < n/4
  const std::size_t n = values.size();
  const int batch = L + 1;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                      static_cast<double>(n);

  // Mean squared batch sum of the centered series over complete batches.
  const std::size_t n_batches = n / static_cast<std::size_t>(batch);
  double lhs = 0.0;
  for (std::size_t b = 0; b < n_batches; ++b) {
    double s = 0.0;
    for (int j = 0; j < batch; ++j) {
      s += values[b * static_cast<std::size_t>(batch) + static_cast<std::size_t>(j)] - mean;
    }
    lhs += s * s;
  }
  lhs /= static_cast<double>(n_batches);

  double cov_sum = 0.0;
  for (double c : decay.coeffs) cov_sum += c;

  SecondMomentBound bound;
  bound.lhs = lhs;
  bound.rhs = 2.0 * static_cast<double>(batch) * cov_sum;
  bound.holds = lhs <= bound.rhs * 1.1;
  bound.batch = batch;
  return bound;
}

}  // namespace ruinadjust
