#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "ruinadjust/processes.hpp"

namespace testhelp {

// Reference values, each computed with an independent high-iteration
// bisection on the defining scalar equation (200 halvings from a wide
// bracket) outside this codebase, then frozen here as literals. Tests compare
// library output against these, not the other way around.
inline constexpr double kWIid_12_1 = 0.3764379972494608;    // theta=1.2, c=1
inline constexpr double kWIid_2_1 = 1.5936242600400399;     // theta=2,   c=1
inline constexpr double kWAr1_03 = 0.26350659807462257;     // a=0.3 of kWIid_12_1
inline constexpr double kWAr1_04 = 0.22586279834967649;     // a=0.4
inline constexpr double kWMa1_02 = 0.31369833104121736;     // a=0.2
// Block-length sequence for the a=0.2 moving-average model, r = 1,2,4,...,128.
inline constexpr double kWrMa1[8] = {
    0.42245473853800697, 0.35841150133019184, 0.3343232067073826,
    0.3236333423181802,  0.3185772830498492,  0.3161163364517371,
    0.31490204630854746, 0.3142988766468884};
// Root of log((e^{-2t} + e^{t})/2) = 0: t = log((1+sqrt(5))/2).
inline constexpr double kTwoPointRoot = 0.48121182505960325;
// (e^{-2t} + e^{t})/2 at t = 0.4805.
inline constexpr double kTwoPointMgfAt04805 = 0.9996964129543715;
// Population variance of e^{tX} about its mean for the two-point X in {-2, 1}
// at t = kTwoPointRoot.  At the root the two values are 1/phi^2 and phi
// (golden ratio), the mean is exactly 1, and the variance is (phi-1)^2;
// the closed form agrees with this constant to 3e-16.
inline constexpr double kTwoPointVarExp = 0.3819660112501049;
// E|xi - c| at theta=1.2, c=1.
inline constexpr double kAbsMean_12_1 = 0.6686570198536702;
// Root of the log-MGF of the stationary a=0.3 autoregressive marginal
// (geometric-weight sum of innovations): the population value the one-step
// estimator targets on that model.
inline constexpr double kWOneStepAr1_03 = 0.46498059609174247;

inline ruinadjust::InnovationSpec make_inn(double theta, double c) {
  ruinadjust::InnovationSpec inn;
  inn.theta = theta;
  inn.c = c;
  return inn;
}

// Plain fixed-iteration bisection; requires f(lo) < 0 < f(hi) conceptually
// (non-finite values treated as positive side). Used to cross-check the
// production solver with independently written logic.
inline double naive_bisect(const std::function<double(double)>& f, double lo,
                           double hi, int iters = 200) {
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double v = f(mid);
    if (std::isfinite(v) && v < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Independent root locator: walk a uniform grid until the sign flips, then
// bisect inside that cell. Deliberately different search strategy from the
// production probe-and-expand design.
inline double fine_grid_positive_root(const std::function<double(double)>& f,
                                      double upper, int points = 20000) {
  double prev_t = upper / points;  // skip t=0 where the objective vanishes
  double prev_v = f(prev_t);
  for (int i = 2; i <= points; ++i) {
    const double t = upper * i / points;
    const double v = f(t);
    if (std::isfinite(prev_v) && prev_v < 0.0 && (!std::isfinite(v) || v >= 0.0)) {
      return naive_bisect(f, prev_t, t);
    }
    prev_t = t;
    prev_v = v;
  }
  return std::nan("");
}

}  // namespace testhelp
