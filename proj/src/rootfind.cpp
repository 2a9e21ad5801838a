#include "ruinadjust/rootfind.hpp"

#include <cmath>

namespace ruinadjust {

ExistenceReport check_existence(const std::vector<double>& values) {
  if (values.empty()) throw SpecError("check_existence: empty sequence");
  double sum = 0.0;
  bool has_positive = false;
  for (double x : values) {
    sum += x;
    if (x > 0.0) has_positive = true;
  }
  ExistenceReport report;
  report.mean_negative = sum / static_cast<double>(values.size()) < 0.0;
  report.has_positive = has_positive;
  report.abscissa_note = AbscissaNote::FINITE_SUM_INFINITE_A;
  report.verdict = report.mean_negative && report.has_positive;
  return report;
}

namespace {

// Non-finite objective values mean the evaluation left the domain (an
// asymptote or overflow); for bracketing purposes that side is positive.
bool positive_side(double v) { return !std::isfinite(v) || v >= 0.0; }

}  // namespace

RootResult solve_positive_root(const std::function<double(double)>& objective,
                               double upper_hint, double tol) {
  if (!(upper_hint > 0.0) || !std::isfinite(upper_hint)) {
    throw SpecError("solve_positive_root: upper_hint must be positive and finite");
  }
  if (!(tol > 0.0)) throw SpecError("solve_positive_root: tol must be positive");

  int evals = 0;
  auto eval = [&](double t) {
    ++evals;
    return objective(t);
  };

  // Sweep 64 log-spaced probes t_j = upper_hint * 2^(j-63), ascending. The
  // deepest (largest-t) negative probe anchors the bracket; scanning the whole
  // sweep makes rounding noise near t = 0 harmless.
  double lo = 0.0, hi = 0.0;
  int last_neg = -1;
  double probe[64];
  double value[64];
  for (int j = 0; j < 64; ++j) {
    probe[j] = std::ldexp(upper_hint, j - 63);
    value[j] = eval(probe[j]);
    if (std::isfinite(value[j]) && value[j] < 0.0) last_neg = j;
  }
  if (last_neg < 0) {
    throw RootSolveError(RootSolveError::Kind::NO_NEGATIVE_DIP,
                         "objective never dips below zero on (0, upper_hint]");
  }
  if (last_neg < 63) {
    lo = probe[last_neg];
    hi = probe[last_neg + 1];
  } else {
    // Still negative at upper_hint: expand geometrically until the objective
    // turns positive or leaves its domain.
    lo = upper_hint;
    double t = upper_hint;
    bool bracketed = false;
    for (int m = 0; m < 64; ++m) {
      t *= 2.0;
      const double v = eval(t);
      if (positive_side(v)) {
        hi = t;
        bracketed = true;
        break;
      }
      lo = t;
    }
    if (!bracketed) {
      throw RootSolveError(RootSolveError::Kind::NO_SIGN_CHANGE,
                           "objective never becomes positive before the domain boundary");
    }
  }

  const auto width_target = [&](double left) {
    const double rel = 1e-9 * left;
    return std::min(tol, std::max(rel, 1e-13));
  };
  int guard = 0;
  while (hi - lo > width_target(lo) && guard++ < 4000) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval no longer splittable
    const double v = eval(mid);
    if (positive_side(v)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  RootResult result;
  result.root = 0.5 * (lo + hi);
  result.residual = eval(result.root);
  if (!std::isfinite(result.residual)) {
    // The midpoint can sit past a domain asymptote when the upper bracket end
    // is beyond it; the lower end is always inside.
    result.root = lo;
    result.residual = eval(lo);
  }
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.iterations = evals;
  return result;
}

}  // namespace ruinadjust
