#include "ruinadjust/processes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ruinadjust/rootfind.hpp"

namespace ruinadjust {

void validate(const InnovationSpec& inn) {
  if (!(inn.theta > 0.0) || !std::isfinite(inn.theta)) {
    throw SpecError("innovation rate theta must be positive and finite");
  }
  if (!(inn.c > 0.0) || !std::isfinite(inn.c)) {
    throw SpecError("premium rate c must be positive and finite");
  }
  if (!(inn.c * inn.theta > 1.0)) {
    throw SpecError("net-profit condition c*theta > 1 is violated");
  }
}

double innovation_mean(const InnovationSpec& inn) { return 1.0 / inn.theta - inn.c; }

double innovation_variance(const InnovationSpec& inn) { return 1.0 / (inn.theta * inn.theta); }

double innovation_abs_mean(const InnovationSpec& inn) {
  // E|xi - c| with xi ~ Exp(theta): c - 1/theta + (2/theta) e^{-theta c}.
  return inn.c - 1.0 / inn.theta + 2.0 / inn.theta * std::exp(-inn.theta * inn.c);
}

double innovation_log_mgf(const InnovationSpec& inn, double t) {
  if (t >= inn.theta) return std::numeric_limits<double>::infinity();
  return -t * inn.c + std::log(inn.theta) - std::log(inn.theta - t);
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::IID: return "iid";
    case ModelKind::AR1: return "ar1";
    case ModelKind::MA1: return "ma1";
    case ModelKind::NLAR1: return "nlar1";
    case ModelKind::BERNOULLI_SHIFT: return "bernoulli_shift";
  }
  throw SpecError("unknown model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "iid") return ModelKind::IID;
  if (name == "ar1") return ModelKind::AR1;
  if (name == "ma1") return ModelKind::MA1;
  if (name == "nlar1") return ModelKind::NLAR1;
  if (name == "bernoulli_shift") return ModelKind::BERNOULLI_SHIFT;
  throw SpecError("unknown model kind: " + name);
}

int default_burn_in(ModelKind kind) {
  switch (kind) {
    case ModelKind::IID: return 0;
    case ModelKind::AR1: return 1000;
    case ModelKind::MA1: return 1;
    case ModelKind::NLAR1: return 1000;
    case ModelKind::BERNOULLI_SHIFT: return 1000;
  }
  throw SpecError("unknown model kind");
}

ModelSpec make_model(ModelKind kind, double a, const InnovationSpec& inn) {
  ModelSpec spec;
  spec.kind = kind;
  spec.a = a;
  spec.innovation = inn;
  spec.burn_in = default_burn_in(kind);
  validate(spec);
  return spec;
}

void validate(const ModelSpec& spec) {
  validate(spec.innovation);
  if (!std::isfinite(spec.a)) throw SpecError("model coefficient a must be finite");
  if (spec.burn_in < 0) throw SpecError("burn_in must be non-negative");
  switch (spec.kind) {
    case ModelKind::IID:
      break;
    case ModelKind::AR1:
      if (std::abs(spec.a) >= 1.0) throw SpecError("ar1 requires |a| < 1");
      break;
    case ModelKind::MA1:
      if (!(spec.a > -1.0)) throw SpecError("ma1 requires a > -1");
      break;
    case ModelKind::NLAR1:
      if (std::abs(spec.a) >= 1.0) throw SpecError("nlar1 requires |a| < 1");
      if (!(spec.shift_scale > 0.0) || !std::isfinite(spec.shift_scale)) {
        throw SpecError("nlar1 shift_scale must be positive and finite");
      }
      break;
    case ModelKind::BERNOULLI_SHIFT:
      if (spec.kernel.window < 1) throw SpecError("kernel window must be at least 1");
      if (!spec.kernel.map) throw SpecError("bernoulli_shift requires a kernel map");
      if (!std::is_sorted(spec.kernel.continuity_coeffs.rbegin(),
                          spec.kernel.continuity_coeffs.rend())) {
        throw SpecError("kernel continuity coefficients must be non-increasing");
      }
      break;
  }
}

ModelPath::ModelPath(const ModelSpec& spec, uint64_t seed)
    : spec_(spec), rng_(seed), state_(0.0) {
  validate(spec_);
  if (spec_.kind == ModelKind::BERNOULLI_SHIFT) {
    window_.assign(static_cast<size_t>(spec_.kernel.window), 0.0);
    for (auto& slot : window_) {
      slot = rng_.next_exponential(spec_.innovation.theta) - spec_.innovation.c;
    }
  }
  for (int i = 0; i < spec_.burn_in; ++i) step();
}

double ModelPath::step() {
  const double eps = rng_.next_exponential(spec_.innovation.theta) - spec_.innovation.c;
  switch (spec_.kind) {
    case ModelKind::IID:
      state_ = eps;
      break;
    case ModelKind::AR1:
      state_ = spec_.a * state_ + eps;
      break;
    case ModelKind::MA1:
      // state_ carries the previous innovation between calls.
      {
        const double out = eps + spec_.a * state_;
        state_ = eps;
        return out;
      }
    case ModelKind::NLAR1:
      state_ = spec_.a * state_ * state_ + spec_.shift_scale * eps;
      if (!std::isfinite(state_)) {
        throw UnstableModelError(
            "nlar1 path diverged to a non-finite state; the quadratic map escaped "
            "its stable region (rare but possible for a > 0)");
      }
      break;
    case ModelKind::BERNOULLI_SHIFT: {
      window_.erase(window_.begin());
      window_.push_back(eps);
      const double out = spec_.kernel.map(window_);
      if (!std::isfinite(out)) {
        throw UnstableModelError("bernoulli_shift kernel produced a non-finite value");
      }
      return out;
    }
  }
  return state_;
}

double ModelPath::next() { return step(); }

Sample simulate(const ModelSpec& spec, size_t n, uint64_t seed) {
  if (n < 2) throw SpecError("simulate: n must be at least 2");
  ModelPath path(spec, seed);
  Sample sample;
  sample.values.resize(n);
  for (size_t i = 0; i < n; ++i) sample.values[i] = path.next();
  sample.origin = std::string("simulated:") + to_string(spec.kind) +
                  " a=" + std::to_string(spec.a) +
                  " theta=" + std::to_string(spec.innovation.theta) +
                  " c=" + std::to_string(spec.innovation.c) +
                  " burn_in=" + std::to_string(spec.burn_in) +
                  " seed=" + std::to_string(seed);
  return sample;
}

namespace {

double solve_from_objective(const std::function<double(double)>& objective,
                            double domain_limit) {
  const double hint = 0.999 * domain_limit;
  return solve_positive_root(objective, hint, 1e-10).root;
}

}  // namespace

double analytic_w_iid(const InnovationSpec& inn) {
  validate(inn);
  auto objective = [&](double t) { return innovation_log_mgf(inn, t); };
  return solve_from_objective(objective, inn.theta);
}

double analytic_w_ar1(const InnovationSpec& inn, double a) {
  validate(inn);
  if (std::abs(a) >= 1.0) throw SpecError("ar1 requires |a| < 1");
  // Each innovation is eventually weighted by 1/(1-a) in the recursion, which
  // rescales the root of the one-step equation by exactly (1-a).
  return (1.0 - a) * analytic_w_iid(inn);
}

double analytic_w_ma1(const InnovationSpec& inn, double a) {
  validate(inn);
  if (!(a > -1.0)) throw SpecError("ma1 requires a > -1");
  if (a == 0.0) return analytic_w_iid(inn);
  // Long-run average for X_n = eps_n + a eps_{n-1}: each innovation gets total
  // weight (1 + a), so the limit per-step log-MGF is lambda((1+a) t).
  const double scale = 1.0 + a;
  auto objective = [&](double t) { return innovation_log_mgf(inn, scale * t); };
  const double limit = inn.theta / std::max(1.0, std::abs(scale));
  return solve_from_objective(objective, limit);
}

double analytic_w_r_ma1(const InnovationSpec& inn, double a, int r) {
  validate(inn);
  if (!(a > -1.0)) throw SpecError("ma1 requires a > -1");
  if (r < 1) throw SpecError("block length r must be at least 1");
  if (a == 0.0) return analytic_w_iid(inn);
  if (r == 1) {
    // One-step block sum: Y_1 = eps_1 + a eps_0, a sum of two independent
    // scaled innovations.
    auto objective = [&](double t) {
      return innovation_log_mgf(inn, t) + innovation_log_mgf(inn, a * t);
    };
    const double limit = inn.theta / std::max(1.0, std::abs(a));
    return solve_from_objective(objective, limit);
  }
  // Block sum of r consecutive terms: Y_r = a eps_0 + (1+a) (eps_1 + ... +
  // eps_{r-1}) + eps_r, all innovations independent, so the per-step objective
  // is [lambda(a t) + (r-1) lambda((1+a) t) + lambda(t)] / r.
  auto objective = [&](double t) {
    return (innovation_log_mgf(inn, a * t) +
            (r - 1) * innovation_log_mgf(inn, (1.0 + a) * t) +
            innovation_log_mgf(inn, t)) /
           static_cast<double>(r);
  };
  const double limit =
      inn.theta / std::max({1.0, std::abs(a), std::abs(1.0 + a)});
  return solve_from_objective(objective, limit);
}

}  // namespace ruinadjust
