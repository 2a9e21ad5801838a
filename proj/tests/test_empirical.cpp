#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "ruinadjust/empirical.hpp"
#include "ruinadjust/processes.hpp"

using namespace ruinadjust;
using namespace testhelp;

namespace {

Sample wrap(std::vector<double> values) {
  Sample s;
  s.values = std::move(values);
  s.origin = "test";
  return s;
}

}  // namespace

TEST_CASE("block configuration bounds") {
  CHECK_THROWS_AS(make_block_config(100, 0), SpecError);
  CHECK_THROWS_AS(make_block_config(100, -3), SpecError);
  CHECK_THROWS_AS(make_block_config(5, 3), EstimationError);  // one block only
  const BlockConfig cfg = make_block_config(10, 5);
  CHECK(cfg.k_blocks == 2);
}

TEST_CASE("block sums follow the fixed index convention") {
  const Sample s = wrap({1, 2, 3, 4, 5, 6});
  CHECK(block_sums(s, 2) == std::vector<double>{3, 7, 11});
  const Sample odd = wrap({1, 2, 3, 4, 5});
  CHECK(block_sums(odd, 2) == std::vector<double>{3, 7});  // 5th value discarded
  CHECK(block_sums(odd, 1) == odd.values);
}

TEST_CASE("blocks and prefix sums add up to the same total") {
  // Integer-valued doubles: the additions are exact, so equality is exact.
  std::vector<double> v;
  SplitMix64 rng(8);
  for (int i = 0; i < 1001; ++i) v.push_back(std::floor(rng.next_uniform() * 64.0) - 31.0);
  const Sample s = wrap(v);
  for (int r : {1, 3, 7}) {
    const std::vector<double> z = block_sums(s, r);
    double z_total = 0.0, prefix = 0.0;
    for (double x : z) z_total += x;
    for (std::size_t i = 0; i < z.size() * static_cast<std::size_t>(r); ++i) {
      prefix += v[i];
    }
    CHECK(z_total == prefix);
  }
  // Real-valued data: same identity up to accumulated rounding.
  const Sample g = simulate(make_model(ModelKind::IID, 0.0, make_inn(1.2, 1.0)), 1000, 5);
  const std::vector<double> z = block_sums(g, 7);
  double z_total = 0.0, prefix = 0.0;
  for (double x : z) z_total += x;
  for (std::size_t i = 0; i < z.size() * 7; ++i) prefix += g.values[i];
  CHECK(std::abs(z_total - prefix) <= 1e-12 * std::max(1.0, std::abs(prefix)));
}

TEST_CASE("empirical MGF basics") {
  CHECK(empirical_mgf({3.0, -1.0, 2.0}, 0.0) == 1.0);  // exact at t = 0
  const std::vector<double> constant(17, -0.75);
  CHECK(empirical_mgf(constant, 0.8) == std::exp(0.8 * -0.75));
  CHECK(empirical_log_mgf(constant, 0.8) == doctest::Approx(0.8 * -0.75).epsilon(1e-15));
  CHECK_THROWS_AS(empirical_mgf({}, 0.5), SpecError);
  CHECK_THROWS_AS(empirical_mgf({}, 0.0), SpecError);
}

TEST_CASE("two-point MGF value matches the frozen reference") {
  const std::vector<double> v{-2.0, 1.0};
  CHECK(std::abs(empirical_mgf(v, 0.4805) - kTwoPointMgfAt04805) < 1e-12);
  CHECK(std::abs(empirical_mgf(v, 0.4805) - 1.0) < 5e-4);
}

TEST_CASE("overflow past stabilization is reported as unbounded at that point") {
  try {
    empirical_mgf({1000.0, -5.0}, 1.0);
    FAIL("expected unbounded evaluation");
  } catch (const UnboundedMgfError& e) {
    CHECK(e.t == 1.0);
  }
  CHECK_THROWS_AS(empirical_log_mgf({1000.0, -5.0}, 1.0), UnboundedMgfError);
}

TEST_CASE("shift equivariance of the log empirical MGF") {
  const Sample s = simulate(make_model(ModelKind::IID, 0.0, make_inn(1.2, 1.0)), 2000, 12);
  const double shift = 0.37;
  std::vector<double> shifted = s.values;
  for (double& x : shifted) x += shift;
  for (double t : {0.1, 0.25, 0.4}) {
    const double lhs = empirical_log_mgf(shifted, t);
    const double rhs = empirical_log_mgf(s.values, t) + shift * t;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("curve grid validation") {
  const Sample s = wrap({-1.0, 1.0, -0.5, 0.25});
  CHECK_THROWS_AS(cgf_curve(s, 1, {}), SpecError);
  CHECK_THROWS_AS(cgf_curve(s, 1, {0.1, 0.2}), SpecError);       // must start at 0
  CHECK_THROWS_AS(cgf_curve(s, 1, {0.0, 0.2, 0.2}), SpecError);  // strictly increasing
}

TEST_CASE("curve starts at exactly zero and is convex where bounded") {
  const Sample s = simulate(make_model(ModelKind::IID, 0.0, make_inn(1.2, 1.0)), 4000, 3);
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(0.5 * i / 50.0);
  const CgfCurve curve = cgf_curve(s, 1, grid);
  CHECK(curve.values[0] == 0.0);
  CHECK(curve.k_effective == 4000);
  for (std::size_t i = 2; i < curve.values.size(); ++i) {
    const double second_diff =
        curve.values[i] - 2.0 * curve.values[i - 1] + curve.values[i - 2];
    CHECK(second_diff >= -1e-12);
  }
}

TEST_CASE("a constant sample draws a straight line") {
  const Sample s = wrap(std::vector<double>(9, -1.0));
  std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
  const CgfCurve curve = cgf_curve(s, 1, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(curve.values[i] == -grid[i]);
    CHECK(curve.bounded[i]);
  }
}

TEST_CASE("grid points past double range are marked unbounded") {
  const Sample s = wrap({800.0, -1000.0, 700.0, -900.0});
  const CgfCurve curve = cgf_curve(s, 1, {0.0, 0.5, 1.0, 2.0});
  CHECK(curve.bounded[0]);
  CHECK(curve.values[0] == 0.0);
  CHECK_FALSE(curve.bounded[2]);  // t=1: exponent 800
  CHECK_FALSE(curve.bounded[3]);
  CHECK(std::isinf(curve.values[3]));
}

TEST_CASE("block length one is the identity pipeline") {
  const Sample s = simulate(make_model(ModelKind::MA1, 0.2, make_inn(1.2, 1.0)), 600, 9);
  const Sample z = wrap(block_sums(s, 1));
  std::vector<double> grid{0.0, 0.1, 0.2, 0.3};
  const CgfCurve a = cgf_curve(s, 1, grid);
  const CgfCurve b = cgf_curve(z, 1, grid);
  CHECK(a.values == b.values);
}

TEST_CASE("autocovariance decay: validation and closed-form checks") {
  CHECK_THROWS_AS(cov_decay(std::vector<double>(20, 1.0), 5), SpecError);  // 5*4 >= 20
  CHECK_THROWS_AS(cov_decay({1.0, 2.0}, -1), SpecError);

  const std::vector<double> constant(100, 3.25);
  const CovDecay flat = cov_decay(constant, 10);
  for (double c : flat.coeffs) CHECK(c == 0.0);

  const Sample iid = simulate(make_model(ModelKind::IID, 0.0, make_inn(1.2, 1.0)), 10000, 21);
  const CovDecay d = cov_decay(iid.values, 5);
  CHECK(d.coeffs[0] > 0.0);
  CHECK(d.lags == std::vector<int>{0, 1, 2, 3, 4, 5});
  for (std::size_t j = 1; j < d.coeffs.size(); ++j) {
    CHECK(std::abs(d.coeffs[j]) < 4.0 / std::sqrt(10000.0));
  }

  const Sample ar = simulate(make_model(ModelKind::AR1, 0.3, make_inn(1.2, 1.0)), 10000, 22);
  const CovDecay da = cov_decay(ar.values, 3);
  CHECK(std::abs(da.coeffs[1] / da.coeffs[0] - 0.3) < 0.05);
}

TEST_CASE("second-moment inequality holds empirically") {
  const Sample iid = simulate(make_model(ModelKind::IID, 0.0, make_inn(1.2, 1.0)), 10000, 31);
  const SecondMomentBound b1 = second_moment_bound_check(iid.values, 49);
  CHECK(b1.batch == 50);
  CHECK(b1.holds);

  const SecondMomentBound zero = second_moment_bound_check(std::vector<double>(40, 0.0), 4);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.holds);

  const Sample ma = simulate(make_model(ModelKind::MA1, 0.2, make_inn(1.2, 1.0)), 10000, 32);
  CHECK(second_moment_bound_check(ma.values, 49).holds);
}
