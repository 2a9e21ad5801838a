#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "ruinadjust/processes.hpp"
#include "ruinadjust/stats.hpp"

using namespace ruinadjust;
using namespace testhelp;

TEST_CASE("innovation moments match closed forms") {
  const InnovationSpec inn = make_inn(1.2, 1.0);
  CHECK(innovation_mean(inn) == doctest::Approx(-1.0 / 6.0).epsilon(1e-14));
  CHECK(innovation_variance(inn) == doctest::Approx(1.0 / 1.44).epsilon(1e-14));
  CHECK(innovation_abs_mean(inn) == doctest::Approx(kAbsMean_12_1).epsilon(1e-13));
}

TEST_CASE("log-MGF of the innovation is finite below the rate and infinite past it") {
  const InnovationSpec inn = make_inn(1.2, 1.0);
  CHECK(std::isfinite(innovation_log_mgf(inn, 0.5)));
  CHECK(innovation_log_mgf(inn, 0.0) == 0.0);
  CHECK(std::isinf(innovation_log_mgf(inn, 1.2)));
  CHECK(std::isinf(innovation_log_mgf(inn, 2.0)));
  // Convexity with a dip: negative below the root, positive above it.
  CHECK(innovation_log_mgf(inn, 0.2) < 0.0);
  CHECK(innovation_log_mgf(inn, 1.0) > 0.0);
}

TEST_CASE("parameter validation rejects broken specs") {
  CHECK_THROWS_AS(validate(make_inn(0.0, 1.0)), SpecError);
  CHECK_THROWS_AS(validate(make_inn(-1.0, 1.0)), SpecError);
  CHECK_THROWS_AS(validate(make_inn(1.2, 0.0)), SpecError);
  // net-profit violation: c * theta <= 1
  CHECK_THROWS_AS(validate(make_inn(0.9, 1.0)), SpecError);
  CHECK_NOTHROW(validate(make_inn(1.2, 1.0)));

  CHECK_THROWS_AS(make_model(ModelKind::AR1, 1.0, make_inn(1.2, 1.0)), SpecError);
  CHECK_THROWS_AS(make_model(ModelKind::AR1, -1.0, make_inn(1.2, 1.0)), SpecError);
  CHECK_THROWS_AS(make_model(ModelKind::NLAR1, 1.1, make_inn(1.2, 1.0)), SpecError);
  CHECK_THROWS_AS(make_model(ModelKind::MA1, -1.0, make_inn(1.2, 1.0)), SpecError);
  CHECK_NOTHROW(make_model(ModelKind::MA1, -0.5, make_inn(1.2, 1.0)));

  ModelSpec bad = make_model(ModelKind::IID, 0.0, make_inn(1.2, 1.0));
  bad.burn_in = -1;
  CHECK_THROWS_AS(validate(bad), SpecError);

  ModelSpec shift;
  shift.kind = ModelKind::BERNOULLI_SHIFT;
  shift.innovation = make_inn(1.2, 1.0);
  CHECK_THROWS_AS(validate(shift), SpecError);  // no kernel map
  shift.kernel.window = 2;
  shift.kernel.map = [](const std::vector<double>& w) { return 0.5 * (w[0] + w[1]); };
  shift.kernel.continuity_coeffs = {1.0, 2.0};  // increasing: rejected
  CHECK_THROWS_AS(validate(shift), SpecError);
  shift.kernel.continuity_coeffs = {2.0, 1.0};
  CHECK_NOTHROW(validate(shift));
}

TEST_CASE("model kind names round-trip") {
  for (ModelKind kind : {ModelKind::IID, ModelKind::AR1, ModelKind::MA1,
                         ModelKind::NLAR1, ModelKind::BERNOULLI_SHIFT}) {
    CHECK(model_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(model_kind_from_string("arma"), SpecError);
}

TEST_CASE("default burn-in per model") {
  CHECK(default_burn_in(ModelKind::IID) == 0);
  CHECK(default_burn_in(ModelKind::AR1) == 1000);
  CHECK(default_burn_in(ModelKind::MA1) == 1);
  CHECK(default_burn_in(ModelKind::NLAR1) == 1000);
  CHECK(default_burn_in(ModelKind::BERNOULLI_SHIFT) == 1000);
}

TEST_CASE("simulation is a pure function of spec, n and seed") {
  const ModelSpec spec = make_model(ModelKind::AR1, 0.3, make_inn(1.2, 1.0));
  const Sample a = simulate(spec, 500, 42);
  const Sample b = simulate(spec, 500, 42);
  const Sample c = simulate(spec, 500, 43);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(a.values.size() == 500);
  CHECK(a.origin.find("ar1") != std::string::npos);
  CHECK(a.origin.find("seed=42") != std::string::npos);
  CHECK_THROWS_AS(simulate(spec, 1, 42), SpecError);
}

TEST_CASE("iid sample mean sits near its population value") {
  const ModelSpec spec = make_model(ModelKind::IID, 0.0, make_inn(1.2, 1.0));
  const Sample s = simulate(spec, 10000, 20240817);
  // population mean -1/6, sd of the mean = sqrt(1/1.44/n)
  const double mc_err = 3.0 * std::sqrt(1.0 / 1.44 / 10000.0);
  CHECK(std::abs(mean(s.values) - (-1.0 / 6.0)) < mc_err);
}

TEST_CASE("moving-average sample variance sits near its population value") {
  const ModelSpec spec = make_model(ModelKind::MA1, 0.2, make_inn(1.2, 1.0));
  const Sample s = simulate(spec, 10000, 91);
  const double pop_var = (1.0 + 0.2 * 0.2) / 1.44;
  CHECK(std::abs(sample_variance(s.values) - pop_var) < 0.06);
}

TEST_CASE("a=0 collapses every recursive model to the iid stream") {
  const InnovationSpec inn = make_inn(1.2, 1.0);
  ModelSpec iid = make_model(ModelKind::IID, 0.0, inn);
  iid.burn_in = 7;
  const Sample base = simulate(iid, 200, 777);

  ModelSpec ar = make_model(ModelKind::AR1, 0.0, inn);
  ar.burn_in = 7;
  CHECK(simulate(ar, 200, 777).values == base.values);

  ModelSpec ma = make_model(ModelKind::MA1, 0.0, inn);
  ma.burn_in = 7;
  CHECK(simulate(ma, 200, 777).values == base.values);

  ModelSpec nl = make_model(ModelKind::NLAR1, 0.0, inn);
  nl.burn_in = 7;
  nl.shift_scale = 1.0;
  CHECK(simulate(nl, 200, 777).values == base.values);

  // A pass-through one-slot kernel is the iid stream too; its window prefill
  // consumes one draw, so one less burn-in step lines the streams up.
  ModelSpec bs;
  bs.kind = ModelKind::BERNOULLI_SHIFT;
  bs.innovation = inn;
  bs.burn_in = 6;
  bs.kernel.window = 1;
  bs.kernel.map = [](const std::vector<double>& w) { return w.back(); };
  CHECK(simulate(bs, 200, 777).values == base.values);
}

TEST_CASE("the one-step root matches the independently computed references") {
  CHECK(std::abs(analytic_w_iid(make_inn(1.2, 1.0)) - kWIid_12_1) < 1e-9);
  CHECK(std::abs(analytic_w_iid(make_inn(2.0, 1.0)) - kWIid_2_1) < 1e-9);
  // substitute back: residual of the defining equation
  const InnovationSpec inn = make_inn(1.2, 1.0);
  const double w = analytic_w_iid(inn);
  CHECK(std::abs(innovation_log_mgf(inn, w)) <= 1e-8);
}

TEST_CASE("the root vanishes at the net-profit boundary") {
  const double w = analytic_w_iid(make_inn(1.2, 1.0 / 1.2 + 1e-4));
  CHECK(w > 0.0);
  CHECK(w < 0.05);
}

TEST_CASE("positive scaling of the innovation divides the root") {
  const double w = analytic_w_iid(make_inn(1.2, 1.0));
  for (double lam : {0.5, 2.0, 10.0}) {
    const double w_scaled = analytic_w_iid(make_inn(1.2 / lam, lam * 1.0));
    CHECK(std::abs(w_scaled - w / lam) <= 1e-8 * (w / lam));
  }
}

TEST_CASE("autoregressive root is the contracted one-step root") {
  const InnovationSpec inn = make_inn(1.2, 1.0);
  CHECK(std::abs(analytic_w_ar1(inn, 0.3) - kWAr1_03) < 1e-9);
  CHECK(std::abs(analytic_w_ar1(inn, 0.4) - kWAr1_04) < 1e-9);
  CHECK(analytic_w_ar1(inn, 0.0) == analytic_w_iid(inn));
  CHECK(analytic_w_ar1(inn, 0.3) == doctest::Approx(0.7 * analytic_w_iid(inn)).epsilon(1e-15));
  CHECK_THROWS_AS(analytic_w_ar1(inn, 1.0), SpecError);
}

TEST_CASE("moving-average root matches the independently computed reference") {
  const InnovationSpec inn = make_inn(1.2, 1.0);
  CHECK(std::abs(analytic_w_ma1(inn, 0.2) - kWMa1_02) < 1e-9);
  CHECK(analytic_w_ma1(inn, 0.0) == analytic_w_iid(inn));
  CHECK_THROWS_AS(analytic_w_ma1(inn, -1.0), SpecError);
  // residual in the defining equation
  const double w = analytic_w_ma1(inn, 0.2);
  CHECK(std::abs(innovation_log_mgf(inn, 1.2 * w)) <= 1e-8);
}

TEST_CASE("block-length roots walk down to the moving-average limit") {
  const InnovationSpec inn = make_inn(1.2, 1.0);
  const double w_limit = analytic_w_ma1(inn, 0.2);
  int r = 1;
  double prev = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double w = analytic_w_r_ma1(inn, 0.2, r);
    CHECK(std::abs(w - kWrMa1[i]) < 1e-9);
    if (i > 0) CHECK(w < prev);  // decreasing along doubling block lengths
    prev = w;
    r *= 2;
  }
  CHECK(std::abs(analytic_w_r_ma1(inn, 0.2, 64) - w_limit) <
        std::abs(analytic_w_r_ma1(inn, 0.2, 8) - w_limit));
  CHECK(std::abs(analytic_w_r_ma1(inn, 0.2, 128) - w_limit) < 1e-3);
}

TEST_CASE("independent innovations make the block root length-free") {
  const InnovationSpec inn = make_inn(1.2, 1.0);
  const double w1 = analytic_w_r_ma1(inn, 0.0, 1);
  CHECK(w1 == analytic_w_iid(inn));
  for (int r : {2, 3, 7, 16}) {
    CHECK(std::abs(analytic_w_r_ma1(inn, 0.0, r) - w1) < 1e-9);
  }
  CHECK_THROWS_AS(analytic_w_r_ma1(inn, 0.2, 0), SpecError);
}

TEST_CASE("nonlinear recursion stays in its stable region for a vetted seed") {
  ModelSpec spec = make_model(ModelKind::NLAR1, 0.3, make_inn(1.2, 1.0));
  spec.burn_in = 50;
  const Sample s = simulate(spec, 2000, 19);
  for (double v : s.values) CHECK(std::isfinite(v));
  CHECK(mean(s.values) < 0.0);
}
