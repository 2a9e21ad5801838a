#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ruinadjust/errors.hpp"

namespace ruinadjust {

inline double mean(const std::vector<double>& v) {
  if (v.empty()) throw SpecError("mean of empty sequence");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Unbiased (n-1 divisor) sample variance.
inline double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) throw SpecError("sample variance needs at least 2 values");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

inline double sample_sd(const std::vector<double>& v) { return std::sqrt(sample_variance(v)); }

inline double median(std::vector<double> v) {
  if (v.empty()) throw SpecError("median of empty sequence");
  const std::size_t n = v.size();
  std::nth_element(v.begin(), v.begin() + n / 2, v.end());
  double hi = v[n / 2];
  if (n % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + n / 2 - 1, v.end());
  return 0.5 * (v[n / 2 - 1] + hi);
}

// Central moment ratios m3/m2^{3/2} and m4/m2^2 - 3 (moment-based, no small-n
// correction; the callers only use them as distribution-shape diagnostics).
inline double skewness(const std::vector<double>& v) {
  if (v.size() < 3) throw SpecError("skewness needs at least 3 values");
  const double m = mean(v);
  double m2 = 0.0, m3 = 0.0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d;
    m3 += d * d * d;
  }
  const double n = static_cast<double>(v.size());
  m2 /= n;
  m3 /= n;
  return m3 / std::pow(m2, 1.5);
}

inline double excess_kurtosis(const std::vector<double>& v) {
  if (v.size() < 4) throw SpecError("kurtosis needs at least 4 values");
  const double m = mean(v);
  double m2 = 0.0, m4 = 0.0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(v.size());
  m2 /= n;
  m4 /= n;
  return m4 / (m2 * m2) - 3.0;
}

}  // namespace ruinadjust
