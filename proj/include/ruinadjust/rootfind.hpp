#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ruinadjust/errors.hpp"

namespace ruinadjust {

// Why the positivity-of-some-mass condition is enough for a root to exist:
// for a finite sample the moment generating function is a finite sum, so it
// is finite for every t (infinite abscissa); ANALYTIC_A marks closed-form
// objectives whose abscissa is a model constant instead.
enum class AbscissaNote { FINITE_SUM_INFINITE_A, ANALYTIC_A };

// Outcome of the estimability gate: a positive root of the empirical CGF
// exists iff the sample mean is negative and some value is positive.
struct ExistenceReport {
  bool mean_negative = false;
  bool has_positive = false;
  AbscissaNote abscissa_note = AbscissaNote::FINITE_SUM_INFINITE_A;
  bool verdict = false;
};

struct ExistenceError : EstimationError {
  ExistenceReport report;
  explicit ExistenceError(const ExistenceReport& r)
      : EstimationError(std::string("no positive root: ") +
                        (!r.mean_negative ? "sample mean is not negative" : "no positive value in sample")),
        report(r) {}
};

struct RootSolveError : EstimationError {
  enum class Kind { NO_NEGATIVE_DIP, NO_SIGN_CHANGE };
  Kind kind;
  RootSolveError(Kind k, const std::string& what_arg) : EstimationError(what_arg), kind(k) {}
};

struct RootResult {
  double root = 0.0;
  double residual = 0.0;   // objective value at root
  double bracket_lo = 0.0; // final enclosing interval
  double bracket_hi = 0.0;
  int iterations = 0;      // total objective evaluations
};

// Reports whether a sequence admits a positive root of its empirical CGF.
ExistenceReport check_existence(const std::vector<double>& values);

// Finds the positive root of a convex objective with objective(0) = 0 and an
// initial negative dip. Probes 64 log-spaced points on (0, upper_hint] for
// the dip, expands geometrically past upper_hint until the objective turns
// positive (non-finite values count as beyond-domain, hence positive side),
// then bisects. Stops when the bracket width is below min(tol, max(1e-9 *
// bracket_lo, 1e-13)), so results are also relatively accurate for small
// roots. Deterministic: a given objective yields one iterate sequence.
RootResult solve_positive_root(const std::function<double(double)>& objective,
                               double upper_hint, double tol = 1e-9);

}  // namespace ruinadjust
