#include <doctest.h>

#include "dualbern/approx.hpp"
#include "test_support.hpp"

using namespace dualbern;
using dualbern::testing::bernstein_from_monomial;
using dualbern::testing::monomial_from_roots;
using dualbern::testing::uniform_samples;

namespace {

bool contains(const RootEnclosure& e, double r, double slack = 0.0) { return e.lo - slack <= r && r <= e.hi + slack; }

}  // namespace

TEST_CASE("simple roots") {
  SUBCASE("linear") {
    const auto roots = clip_roots(BezierCurve::scalar({-1.0, 3.0}));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].converged);
    CHECK(roots[0].width() <= 1e-10);
    CHECK(contains(roots[0], 0.25));
  }
  SUBCASE("quadratic with two roots") {
    // 16 (x - 1/4)(x - 3/4)
    const auto roots = clip_roots(bernstein_from_monomial(monomial_from_roots({0.25, 0.75}, 16.0)));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].mid() == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(roots[1].mid() == doctest::Approx(0.75).epsilon(1e-10));
  }
  SUBCASE("roots at the interval ends") {
    const auto roots = clip_roots(BezierCurve::scalar({0.0, 1.0, -1.0, 0.0}));
    REQUIRE(roots.size() >= 2);
    CHECK(contains(roots.front(), 0.0));
    CHECK(contains(roots.back(), 1.0));
  }
}

TEST_CASE("no roots") {
  CHECK(clip_roots(BezierCurve::scalar({1.0, 0.2, 3.0, 0.5})).empty());
  CHECK(clip_roots(BezierCurve::scalar({-2.0, -0.1, -4.0})).empty());
  // positive despite a negative control point
  CHECK(clip_roots(BezierCurve::scalar({1.0, -0.4, 1.0})).empty());
}

TEST_CASE("double root") {
  // 10 (10x - 1)(2x - 1)^2 (10x - 9)(x + 1) has integer Bernstein coefficients.
  const BezierCurve p = BezierCurve::scalar({90, -164, -18, 264, -382, 180});
  CHECK(de_casteljau_eval(p, 0.5)[0] == 0.0);
  const auto roots = clip_roots(p, 1e-10);
  REQUIRE(roots.size() == 3);
  CHECK(contains(roots[0], 0.1));
  CHECK(contains(roots[1], 0.5));
  CHECK(contains(roots[2], 0.9));
  CHECK(roots[1].width() <= 1e-8);
}

TEST_CASE("random polynomials against sign scanning") {
  for (unsigned seed = 1; seed <= 60; ++seed) {
    const int count = 1 + static_cast<int>(seed % 5);
    auto rs = uniform_samples(count, seed, 0.02, 0.98);
    std::sort(rs.begin(), rs.end());
    bool separated = true;
    for (std::size_t i = 1; i < rs.size(); ++i) separated = separated && rs[i] - rs[i - 1] > 1e-3;
    if (!separated) continue;
    auto extra = uniform_samples(2, seed + 1000, 1.5, 3.0);
    std::vector<double> all = rs;
    all.push_back(extra[0]);
    all.push_back(-extra[1]);
    const BezierCurve p = bernstein_from_monomial(monomial_from_roots(all));
    const auto found = clip_roots(p, 1e-10);
    CAPTURE(seed);
    REQUIRE(found.size() == rs.size());

    int sign_changes = 0;
    double prev = de_casteljau_eval(p, 0.0)[0];
    for (int s = 1; s <= 100000; ++s) {
      const double v = de_casteljau_eval(p, s / 100000.0)[0];
      if ((prev < 0) != (v < 0)) ++sign_changes;
      prev = v;
    }
    CHECK(sign_changes == static_cast<int>(found.size()));
    for (std::size_t i = 0; i < rs.size(); ++i) {
      CHECK(found[i].converged);
      CHECK(found[i].width() <= 1e-10);
      // rounding the coefficients moves clustered roots; the stored
      // polynomial must change sign across the enclosure, widened past the
      // level where evaluation is pure noise
      const double pad = 1e-12;
      CHECK(de_casteljau_eval(p, found[i].lo - pad)[0] * de_casteljau_eval(p, found[i].hi + pad)[0] < 0.0);
      CHECK(std::fabs(found[i].mid() - rs[i]) <= 1e-8);
    }
  }
}

TEST_CASE("iteration budget and arguments") {
  const BezierCurve p = bernstein_from_monomial(monomial_from_roots({0.3, 0.7}, 4.0));
  const BezierCurve wavy = bernstein_from_monomial(monomial_from_roots({0.15, 0.3, 0.55, 0.7, 0.9, 1.7}));
  const auto capped = clip_roots(wavy, 1e-14, 1);
  REQUIRE(!capped.empty());
  bool any_open = false;
  for (const auto& e : capped) any_open = any_open || !e.converged;
  CHECK(any_open);

  const auto zero = clip_roots(BezierCurve::scalar({0.0, 0.0, 0.0}));
  REQUIRE(zero.size() == 1);
  CHECK_FALSE(zero[0].converged);

  CHECK_THROWS_AS(clip_roots(BezierCurve(Eigen::MatrixXd::Ones(3, 2))), std::invalid_argument);
  CHECK_THROWS_AS(clip_roots(p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(clip_roots(p, 1e-8, -1), std::invalid_argument);
}
