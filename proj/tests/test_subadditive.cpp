#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "ruinadjust/empirical.hpp"
#include "ruinadjust/subadditive.hpp"

using namespace ruinadjust;
using namespace testhelp;

namespace {

SubadditiveSeq make_seq(std::vector<double> h, std::vector<double> delta) {
  SubadditiveSeq seq;
  seq.h = std::move(h);
  seq.delta = std::move(delta);
  return seq;
}

SubadditiveSeq from_fn(int N, double (*hf)(int), double delta_const) {
  SubadditiveSeq seq;
  for (int n = 1; n <= N; ++n) {
    seq.h.push_back(hf(n));
    seq.delta.push_back(delta_const);
  }
  return seq;
}

}  // namespace

TEST_CASE("sequence validation") {
  CHECK_THROWS_AS(validate(make_seq({1, 2}, {0})), SpecError);       // length mismatch
  CHECK_THROWS_AS(validate(make_seq({}, {})), SpecError);            // empty
  CHECK_THROWS_AS(validate(make_seq({1, 2}, {1, 0.5})), SpecError);  // delta decreasing
  CHECK_NOTHROW(validate(make_seq({1, 2}, {0.5, 0.5})));
  CHECK_THROWS_AS(estimate_limit(make_seq({1, 2, 3}, {0, 0, 0})), SpecError);  // N < 4
}

TEST_CASE("an exactly linear sequence is reproduced everywhere") {
  const auto est = estimate_limit(from_fn(12, [](int n) { return 3.0 * n; }, 0.0));
  CHECK(est.lambda_hat == 3.0);
  REQUIRE(est.m_values.size() == 6);
  for (double b : est.bound_at_m) CHECK(b == 3.0);
  CHECK(est.tail_exact);
  CHECK_FALSE(est.violation_found);
}

TEST_CASE("affine sequence with a constant allowance matches hand evaluation") {
  const auto est = estimate_limit(from_fn(40, [](int n) { return 2.0 * n + 5.0; }, 10.0));
  CHECK(est.lambda_hat == doctest::Approx(2.125).epsilon(1e-15));
  REQUIRE(est.m_values.size() == 20);
  // m=1: 7 - 10 + 40 * (1/2) = 17; m=20: 2.25 - 0.5 + 40 * (41/1640) = 2.75.
  CHECK(std::abs(est.bound_at_m[0] - 17.0) < 1e-9);
  CHECK(std::abs(est.bound_at_m[19] - 2.75) < 1e-9);
  CHECK(est.tail_exact);
  CHECK_FALSE(est.violation_found);
  for (double b : est.bound_at_m) CHECK(b >= est.lambda_hat);
}

TEST_CASE("the one-step cumulant line recovers its slope exactly") {
  const InnovationSpec inn = make_inn(1.2, 1.0);
  const double slope = innovation_log_mgf(inn, 0.25);
  SubadditiveSeq seq;
  for (int n = 1; n <= 16; ++n) {  // power-of-two length keeps h(N)/N exact
    seq.h.push_back(slope * n);
    seq.delta.push_back(0.0);
  }
  const auto est = estimate_limit(seq);
  CHECK(est.lambda_hat == slope);
  CHECK_FALSE(est.violation_found);
}

TEST_CASE("exactly subadditive sequences keep the last ratio below every earlier one") {
  SubadditiveSeq sqrt_seq;
  for (int n = 1; n <= 30; ++n) {
    sqrt_seq.h.push_back(std::sqrt(static_cast<double>(n)));
    sqrt_seq.delta.push_back(0.0);
  }
  const auto est = estimate_limit(sqrt_seq);
  CHECK_FALSE(est.violation_found);
  double min_ratio = est.bound_at_m[0];
  for (std::size_t m = 1; m <= sqrt_seq.h.size(); ++m) {
    min_ratio = std::min(min_ratio, sqrt_seq.h[m - 1] / static_cast<double>(m));
  }
  CHECK(est.lambda_hat <= min_ratio + 1e-12);
  for (double b : est.bound_at_m) CHECK(b >= est.lambda_hat - 1e-12);

  SubadditiveSeq log_seq;
  for (int n = 1; n <= 25; ++n) {
    log_seq.h.push_back(std::log1p(static_cast<double>(n)) + 0.5 * n);
    log_seq.delta.push_back(0.0);
  }
  const auto est2 = estimate_limit(log_seq);
  CHECK_FALSE(est2.violation_found);
  for (double b : est2.bound_at_m) CHECK(b >= est2.lambda_hat - 1e-12);
}

TEST_CASE("a constructed counterexample is flagged with its worst pair") {
  const auto est = estimate_limit(make_seq({1, 1, 5, 5}, {0, 0, 0, 0}));
  CHECK(est.violation_found);
  CHECK(est.worst_violation == 3.0);  // h(3) - h(1) - h(2)
  CHECK(est.violation_n == 1);
  CHECK(est.violation_m == 2);
}

TEST_CASE("a growing allowance disables the closed-form tail") {
  SubadditiveSeq seq;
  for (int n = 1; n <= 12; ++n) {
    seq.h.push_back(2.0 * n);
    seq.delta.push_back(static_cast<double>(n));  // strictly increasing
  }
  const auto est = estimate_limit(seq);
  CHECK_FALSE(est.tail_exact);
}

TEST_CASE("independent-model moment factorization shows no violation") {
  const ModelSpec spec = make_model(ModelKind::IID, 0.0, make_inn(1.2, 1.0));
  const auto check = check_cgf_subadditivity(spec, 0.2, 8, 71, 2000);
  CHECK(check.shift_bound == 0.0);
  CHECK_FALSE(check.violated);
  CHECK(check.worst_n >= 1);
  CHECK(check.worst_m >= check.worst_n);
  CHECK(check.worst_n + check.worst_m <= 8);
  REQUIRE(check.log_mgf.size() == 8);
  for (double se : check.se_log) CHECK(se > 0.0);
}

TEST_CASE("moving-average coupling bound absorbs the dependence") {
  const ModelSpec spec = make_model(ModelKind::MA1, 0.2, make_inn(1.2, 1.0));
  const auto check = check_cgf_subadditivity(spec, 0.25, 8, 72, 2000);
  CHECK(check.shift_bound == doctest::Approx(0.2 * kAbsMean_12_1).epsilon(1e-12));
  CHECK_FALSE(check.violated);
}

TEST_CASE("autoregressive coupling bound comes from the geometric tail") {
  const ModelSpec spec = make_model(ModelKind::AR1, 0.3, make_inn(1.2, 1.0));
  const auto check = check_cgf_subadditivity(spec, 0.2, 6, 73, 1500);
  CHECK(check.shift_bound ==
        doctest::Approx(0.3 / 0.7 * kAbsMean_12_1).epsilon(1e-12));
  CHECK_FALSE(check.violated);
}

TEST_CASE("models without a default coupling bound require an explicit one") {
  ModelSpec bs;
  bs.kind = ModelKind::BERNOULLI_SHIFT;
  bs.innovation = make_inn(1.2, 1.0);
  bs.burn_in = 10;
  bs.kernel.window = 2;
  bs.kernel.map = [](const std::vector<double>& w) { return 0.7 * w[1] + 0.3 * w[0]; };
  CHECK_THROWS_AS(check_cgf_subadditivity(bs, 0.2, 4, 74, 500), SpecError);
  const auto check = check_cgf_subadditivity(bs, 0.2, 4, 74, 500, 0.5);
  CHECK(check.shift_bound == 0.5);
  REQUIRE(check.log_mgf.size() == 4);
}

TEST_CASE("diagnostic input validation") {
  const ModelSpec spec = make_model(ModelKind::IID, 0.0, make_inn(1.2, 1.0));
  CHECK_THROWS_AS(check_cgf_subadditivity(spec, 0.0, 8, 1), SpecError);
  CHECK_THROWS_AS(check_cgf_subadditivity(spec, -0.5, 8, 1), SpecError);
  CHECK_THROWS_AS(check_cgf_subadditivity(spec, 0.2, 1, 1), SpecError);
  CHECK_THROWS_AS(check_cgf_subadditivity(spec, 0.2, 8, 1, 50), SpecError);
}
