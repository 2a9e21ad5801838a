#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ruinadjust/errors.hpp"
#include "ruinadjust/rng.hpp"

namespace ruinadjust {

// Innovation law: eps = xi - c with xi ~ Exponential(theta). The net-profit
// condition c*theta > 1 makes the innovation mean negative.
struct InnovationSpec {
  double theta = 1.2;  // rate of the exponential claim xi
  double c = 1.0;      // constant premium subtracted each period
};

void validate(const InnovationSpec& inn);  // throws SpecError

double innovation_mean(const InnovationSpec& inn);      // 1/theta - c
double innovation_variance(const InnovationSpec& inn);  // 1/theta^2
double innovation_abs_mean(const InnovationSpec& inn);  // E|xi - c|, closed form
// log E e^{t(xi - c)} = -t*c + log(theta) - log(theta - t); +inf for t >= theta.
double innovation_log_mgf(const InnovationSpec& inn, double t);

enum class ModelKind { IID, AR1, MA1, NLAR1, BERNOULLI_SHIFT };

const char* to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);  // throws SpecError

// Finite-window functional for BERNOULLI_SHIFT: output = map(window) where
// the window holds the last `window` innovations, newest last. The
// continuity coefficients are declared decay metadata carried for diagnostics
// (they are documentation, not enforced behavior).
struct ShiftKernel {
  int window = 1;
  std::function<double(const std::vector<double>&)> map;
  std::vector<double> continuity_coeffs;
};

struct ModelSpec {
  ModelKind kind = ModelKind::IID;
  double a = 0.0;              // recursion / moving-average coefficient (unused for IID)
  InnovationSpec innovation{};
  int burn_in = 0;             // discarded initial draws
  double shift_scale = 0.7;    // innovation scale in the NLAR1 recursion
  ShiftKernel kernel{};        // BERNOULLI_SHIFT only
};

// Burn-in long enough to forget the start state: 1000 for the recursive
// models, 1 for MA1 (one pre-draw so the first kept value sees a real
// previous innovation), 0 for IID.
int default_burn_in(ModelKind kind);

// Convenience constructor filling the default burn-in; validates.
ModelSpec make_model(ModelKind kind, double a, const InnovationSpec& inn);

void validate(const ModelSpec& spec);  // throws SpecError

struct Sample {
  std::vector<double> values;
  std::string origin;  // provenance: model parameters + seed, or source file
};

// Streaming single-path generator; construction consumes the burn-in, after
// which next() yields stationary-regime values. One innovation is drawn per
// step, so equal burn-in counts align streams across model kinds.
class ModelPath {
 public:
  ModelPath(const ModelSpec& spec, std::uint64_t seed);
  double next();

 private:
  double step();
  ModelSpec spec_;
  SplitMix64 rng_;
  double state_ = 0.0;  // previous output (AR1/NLAR1) or previous innovation (MA1)
  std::vector<double> window_;  // BERNOULLI_SHIFT history, newest last
};

// Draws exactly n values from the stationary regime. Pure function of
// (spec, n, seed): identical inputs give bit-identical output. Throws
// EstimationError if the recursion produces a non-finite value.
Sample simulate(const ModelSpec& spec, std::size_t n, std::uint64_t seed);

// Closed-form adjustment coefficients for the built-in models, all solved to
// absolute tolerance 1e-10 from their defining scalar equations.
double analytic_w_iid(const InnovationSpec& inn);
double analytic_w_ar1(const InnovationSpec& inn, double a);   // (1 - a) * analytic_w_iid
double analytic_w_ma1(const InnovationSpec& inn, double a);
// Fixed block length r: root of (1/r) log E e^{t Y_r} = 0 where
// Y_r = a e_0 + (1+a) (e_1 + ... + e_{r-1}) + e_r.
double analytic_w_r_ma1(const InnovationSpec& inn, double a, int r);

}  // namespace ruinadjust
