#include <doctest.h>

#include "dualbern/approx.hpp"
#include "dualbern/oracle.hpp"
#include "dualbern/quadrature.hpp"
#include "test_support.hpp"

using namespace dualbern;
using dualbern::testing::close_rel;
using dualbern::testing::uniform_samples;

namespace {

BezierCurve random_curve(int n, int d, unsigned seed) {
  const auto v = uniform_samples((n + 1) * d, seed, -1.0, 1.0);
  Eigen::MatrixXd pts(n + 1, d);
  for (int i = 0; i <= n; ++i) {
    for (int c = 0; c < d; ++c) pts(i, c) = v[i * d + c];
  }
  return BezierCurve(pts);
}

}  // namespace

TEST_CASE("boundary correction factors") {
  const JacobiParams legendre(0.0, 0.0);
  CHECK(kij(2, 1, 0, legendre, 1, 0) == doctest::Approx(1.0));
  CHECK(kij(2, 1, 0, legendre, 2, 0) == doctest::Approx(-1.0 / 3.0));
  CHECK(kij(3, 1, 1, legendre, 1, 0) == doctest::Approx(4.0 / 3.0));
  CHECK(kij(3, 1, 1, legendre, 1, 3) == doctest::Approx(-2.0 / 3.0));
  CHECK_THROWS_AS(kij(3, 1, 1, legendre, 1, 1), std::out_of_range);
  CHECK_THROWS_AS(kij(3, 1, 1, legendre, 0, 3), std::out_of_range);

  SUBCASE("match quadrature of B^m_j against the dual polynomial") {
    for (const auto& [a, b] : {std::pair{0.0, 0.0}, std::pair{1.0, -0.5}, std::pair{2.5, 1.0}}) {
      const JacobiParams p(a, b);
      const QuadratureRule rule = gauss_jacobi(60, p);
      for (int m = 1; m <= 9; ++m) {
        for (int k = 0; k <= 2; ++k) {
          for (int l = 0; l <= 2 && k + l <= m; ++l) {
            const ConstraintSpec spec(m, k, l);
            for (int i = spec.first(); i <= spec.last(); ++i) {
              for (int j = 0; j <= m; ++j) {
                if (spec.contains(j)) continue;
                const double quad = rule.integrate(
                    [&](double x) { return bernstein(m, j, x) * constrained_dual_eval(spec, i, p, x); });
                CHECK(close_rel(kij(m, k, l, p, i, j), quad, 1e-9, 1e-10));
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("endpoint derivatives") {
  const BezierCurve bump = BezierCurve::scalar({0, 1, 0});
  CHECK(endpoint_derivative(bump, Side::left, 0)[0] == 0.0);
  CHECK(endpoint_derivative(bump, Side::left, 1)[0] == doctest::Approx(2.0));
  CHECK(endpoint_derivative(bump, Side::left, 2)[0] == doctest::Approx(-4.0));
  CHECK(endpoint_derivative(bump, Side::right, 1)[0] == doctest::Approx(-2.0));
  CHECK_THROWS_AS(endpoint_derivative(bump, Side::right, 3), std::invalid_argument);
}

TEST_CASE("constrained least squares") {
  const JacobiParams legendre(0.0, 0.0);
  SUBCASE("projection of the quadratic bump onto lines") {
    const BezierCurve p = degree_reduce(BezierCurve::scalar({0, 1, 0}), 1, 0, 0, legendre);
    CHECK(p.degree() == 1);
    CHECK(p.points()(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(p.points()(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(squared_l2_distance(BezierCurve::scalar({0, 1, 0}), p, legendre)[0] ==
          doctest::Approx(1.0 / 45.0).epsilon(1e-12));
  }
  SUBCASE("constrained cubic to quadratic") {
    const BezierCurve f = BezierCurve::scalar({0, 1, 1, 0});
    const BezierCurve p = degree_reduce(f, 2, 1, 1, legendre);
    CHECK(std::fabs(p.points()(0, 0)) <= 1e-12);
    CHECK(std::fabs(p.points()(1, 0) - 1.5) <= 1e-12);
    CHECK(std::fabs(p.points()(2, 0)) <= 1e-12);
    CHECK(endpoint_derivative(p, Side::left, 1)[0] == doctest::Approx(endpoint_derivative(f, Side::left, 1)[0]));
  }
  SUBCASE("same degree returns the input") {
    const BezierCurve f = random_curve(5, 2, 9u);
    const BezierCurve p = degree_reduce(f, 5, 0, 0, JacobiParams(1.0, 0.5));
    CHECK((p.points() - f.points()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("degree-elevated input is reproduced") {
    const BezierCurve g = random_curve(3, 3, 21u);
    const BezierCurve f = degree_elevate(g, 4);
    for (auto [k, l] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{2, 1}}) {
      const BezierCurve p = degree_reduce(f, 3, k, l, JacobiParams(-0.5, 2.5));
      CHECK((p.points() - g.points()).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  SUBCASE("argument checks") {
    const BezierCurve f = random_curve(4, 1, 3u);
    CHECK_THROWS_AS(degree_reduce(f, 5, 0, 0, legendre), std::domain_error);
    CHECK_THROWS_AS(degree_reduce(f, 2, 2, 1, legendre), std::domain_error);
    const PolynomialTarget target(f);
    const ApproxProblem problem{target, ConstraintSpec(3, 1, 1), legendre};
    CHECK_THROWS_AS(solve_constrained(problem, ctable_build(ConstraintSpec(3, 1, 0), legendre)),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_constrained(problem, ctable_build(ConstraintSpec(3, 1, 1), JacobiParams(1.0, 0.0))),
                    std::invalid_argument);
  }
}

TEST_CASE("least squares properties") {
  for (const auto& [a, b] : {std::pair{0.0, 0.0}, std::pair{-0.5, -0.5}, std::pair{1.0, 2.5}}) {
    const JacobiParams p(a, b);
    const BezierCurve f = random_curve(9, 2, 77u);

    SUBCASE("residual is orthogonal to the target space") {
      for (int m = 0; m <= 8; ++m) {
        const BezierCurve pm = degree_reduce(f, m, 0, 0, p);
        const Eigen::MatrixXd resid = PolynomialTarget(f).moments(m, p) - bernstein_gram(m, m, p) * pm.points();
        CHECK(resid.cwiseAbs().maxCoeff() <= 1e-9);
      }
    }
    SUBCASE("endpoint derivatives are preserved") {
      for (int m = 4; m <= 8; ++m) {
        for (auto [k, l] : {std::pair{1, 0}, std::pair{2, 2}, std::pair{3, 1}, std::pair{0, 3}}) {
          const BezierCurve pm = degree_reduce(f, m, k, l, p);
          for (int o = 0; o < k; ++o) {
            const Eigen::VectorXd want = endpoint_derivative(f, Side::left, o);
            const Eigen::VectorXd got = endpoint_derivative(pm, Side::left, o);
            for (int c = 0; c < 2; ++c) CHECK(close_rel(got[c], want[c], 1e-10, 1e-10));
          }
          for (int o = 0; o < l; ++o) {
            const Eigen::VectorXd want = endpoint_derivative(f, Side::right, o);
            const Eigen::VectorXd got = endpoint_derivative(pm, Side::right, o);
            for (int c = 0; c < 2; ++c) CHECK(close_rel(got[c], want[c], 1e-10, 1e-10));
          }
        }
      }
    }
    SUBCASE("error does not grow with the degree") {
      for (auto [k, l] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{2, 1}}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int m = k + l; m <= 8; ++m) {
          const double e = squared_l2_distance(f, degree_reduce(f, m, k, l, p), p).sum();
          CHECK(e <= prev * (1.0 + 1e-12) + 1e-15);
          prev = e;
        }
      }
    }
    SUBCASE("agrees with the normal equations") {
      for (int m = 0; m <= 10; ++m) {
        const BezierCurve g = random_curve(m + 3, 2, 300u + m);
        for (int k = 0; k <= 2; ++k) {
          for (int l = 0; l <= 2 && k + l <= m; ++l) {
            const ConstraintSpec spec(m, k, l);
            Eigen::MatrixXd left(std::max(k, 1), 2), right(std::max(l, 1), 2);
            for (int o = 0; o < k; ++o) left.row(o) = endpoint_derivative(g, Side::left, o).transpose();
            for (int o = 0; o < l; ++o) right.row(o) = endpoint_derivative(g, Side::right, o).transpose();
            const Eigen::MatrixXd ref = oracle::normal_equations_solve(
                PolynomialTarget(g).moments(m, p), bernstein_gram(m, m, p), spec,
                oracle::boundary_from_derivatives(spec, left, right));
            const BezierCurve got = degree_reduce(g, m, k, l, p);
            const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
            CHECK((got.points() - ref).cwiseAbs().maxCoeff() <= 1e-9 * scale);
          }
        }
      }
    }
  }
}

TEST_CASE("rational bezier curves") {
  Eigen::MatrixXd pts(3, 1);
  pts << 0, 1, 0;
  Eigen::VectorXd w(3);
  w << 1, 2, 1;
  const RationalBezier rat(pts, w);
  CHECK(rat.evaluate(0.5)[0] == doctest::Approx(4 * 0.25 / 1.5));
  CHECK_THROWS_AS(RationalBezier(pts, Eigen::Vector3d(1, 0, 1)), std::domain_error);
  CHECK_THROWS_AS(RationalBezier(pts, Eigen::Vector2d(1, 1)), std::invalid_argument);

  const RationalTarget target(rat);
  // R = 4x(1-x) / (1 + 2x(1-x))
  CHECK(target.derivative(Side::left, 0)[0] == 0.0);
  CHECK(target.derivative(Side::left, 1)[0] == doctest::Approx(4.0));
  CHECK(target.derivative(Side::right, 1)[0] == doctest::Approx(-4.0));
  CHECK(target.derivative(Side::left, 2)[0] == doctest::Approx(-24.0));
  CHECK_THROWS_AS(target.derivative(Side::left, 3), std::domain_error);
}

TEST_CASE("rational moments") {
  const JacobiParams p(0.5, -0.5);
  Eigen::MatrixXd pts(4, 2);
  pts << 0, 0, 1, 2, 3, 2, 4, 0;

  SUBCASE("unit weights give polynomial moments") {
    const RationalBezier rat(pts, Eigen::VectorXd::Ones(4));
    const Eigen::MatrixXd got = rational_moments(rat, 5, p, default_rational_nodes(3, 5));
    const Eigen::MatrixXd want = PolynomialTarget(BezierCurve(pts)).moments(5, p);
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-13);
  }
  SUBCASE("constant rational") {
    Eigen::MatrixXd c = Eigen::MatrixXd::Constant(4, 1, 2.5);
    const RationalBezier rat(c, Eigen::Vector4d(1, 3, 0.5, 2));
    const Eigen::MatrixXd got = rational_moments(rat, 4, p, 40);
    for (int j = 0; j <= 4; ++j) CHECK(close_rel(got(j, 0), 2.5 * bernstein_inner(0, 0, 4, j, p), 1e-12));
  }
  SUBCASE("node doubling") {
    const RationalBezier rat(pts, Eigen::Vector4d(1, 2, 2, 1));
    const Eigen::MatrixXd coarse = rational_moments(rat, 3, JacobiParams(), 64);
    const Eigen::MatrixXd fine = rational_moments(rat, 3, JacobiParams(), 128);
    CHECK((coarse - fine).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK_THROWS_AS(rational_moments(RationalBezier(pts, Eigen::VectorXd::Ones(4)), 2, p, 0), std::invalid_argument);
}

TEST_CASE("rational approximation") {
  const JacobiParams legendre(0.0, 0.0);
  Eigen::MatrixXd pts(4, 2);
  pts << 0, 0, 1, 2, 3, 2, 4, 0;

  const BezierCurve via_rational = rational_approx(RationalBezier(pts, Eigen::VectorXd::Ones(4)), 2, 1, 1, legendre);
  const BezierCurve via_poly = degree_reduce(BezierCurve(pts), 2, 1, 1, legendre);
  CHECK((via_rational.points() - via_poly.points()).cwiseAbs().maxCoeff() <= 1e-12);

  const RationalBezier constant(Eigen::MatrixXd::Constant(5, 1, -1.25), (Eigen::VectorXd(5) << 1, 4, 2, 3, 1).finished());
  const BezierCurve c = rational_approx(constant, 3, 1, 0, JacobiParams(1.0, 1.0));
  for (int i = 0; i <= 3; ++i) CHECK(std::fabs(c.points()(i, 0) + 1.25) <= 1e-12);

  Eigen::MatrixXd bump(3, 1);
  bump << 0, 1, 0;
  const RationalBezier rat(bump, Eigen::Vector3d(1, 2, 1));
  const BezierCurve p = rational_approx(rat, 2, 1, 1, legendre);
  CHECK(p.points()(0, 0) == 0.0);
  CHECK(p.points()(2, 0) == 0.0);
  // matching first derivatives needs k = l = 2
  const BezierCurve p4 = rational_approx(rat, 4, 2, 2, legendre);
  CHECK(std::fabs(endpoint_derivative(p4, Side::left, 1)[0] - 4.0) <= 1e-10);
  CHECK(std::fabs(endpoint_derivative(p4, Side::right, 1)[0] + 4.0) <= 1e-10);
  const BezierCurve p6 = rational_approx(rat, 6, 3, 3, legendre);
  CHECK(std::fabs(endpoint_derivative(p6, Side::left, 2)[0] + 24.0) <= 1e-9);

  CHECK_THROWS_AS(rational_approx(rat, 9, 4, 0, legendre), std::domain_error);
  CHECK_THROWS_AS(rational_approx(rat, 2, 2, 1, legendre), std::domain_error);
}
