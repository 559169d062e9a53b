#include "dualbern/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dualbern/quadrature.hpp"

namespace dualbern {

namespace {

double falling_ratio(int m, int order) {
  // m! / (m - order)!
  return pochhammer(m - order + 1.0, order);
}

double sign_of_power(int e) { return e % 2 == 0 ? 1.0 : -1.0; }

Eigen::VectorXd endpoint_derivative_or_zero(const BezierCurve& curve, Side side, int order) {
  if (order > curve.degree()) return Eigen::VectorXd::Zero(curve.dimension());
  return endpoint_derivative(curve, side, order);
}

}  // namespace

Eigen::VectorXd endpoint_derivative(const BezierCurve& curve, Side side, int order) {
  const int m = curve.degree();
  if (order < 0 || order > m) {
    throw std::invalid_argument("endpoint_derivative: order must lie in [0, degree]");
  }
  const int offset = side == Side::left ? 0 : m - order;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(curve.dimension());
  for (int h = 0; h <= order; ++h) {
    sum += sign_of_power(order + h) * binomial(order, h) * curve.point(offset + h);
  }
  return falling_ratio(m, order) * sum;
}

Eigen::VectorXd PolynomialTarget::derivative(Side side, int order) const {
  return endpoint_derivative_or_zero(curve_, side, order);
}

Eigen::MatrixXd PolynomialTarget::moments(int m, const JacobiParams& params) const {
  // <L_n, B^m_j> = sum_i l_i <B^n_i, B^m_j>
  const Eigen::MatrixXd gram = bernstein_gram(curve_.degree(), m, params);
  return gram.transpose() * curve_.points();
}

RationalBezier::RationalBezier(Eigen::MatrixXd points, Eigen::VectorXd weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw std::invalid_argument("RationalBezier: need at least one control point");
  }
  if (weights_.size() != points_.rows()) {
    throw std::invalid_argument("RationalBezier: one weight per control point required");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0)) throw std::domain_error("RationalBezier: weights must be positive");
  }
}

BezierCurve RationalBezier::numerator() const {
  return BezierCurve(weights_.asDiagonal() * points_);
}

BezierCurve RationalBezier::denominator() const { return BezierCurve(Eigen::MatrixXd(weights_)); }

Eigen::VectorXd RationalBezier::evaluate(double x) const {
  const Eigen::VectorXd b = bernstein_values(degree(), x);
  const Eigen::VectorXd wb = weights_.cwiseProduct(b);
  return points_.transpose() * wb / wb.sum();
}

Eigen::VectorXd RationalTarget::derivative(Side side, int order) const {
  if (order > kMaxRationalDerivativeOrder) {
    throw std::domain_error("rational target: endpoint derivatives limited to order " +
                            std::to_string(kMaxRationalDerivativeOrder));
  }
  const BezierCurve num = rat_.numerator();
  const BezierCurve den = rat_.denominator();
  const double d0 = endpoint_derivative(den, side, 0)[0];
  // Leibniz rule on N = R D: R^(j) = (N^(j) - sum_{h<j} C(j,h) R^(h) D^(j-h)) / D
  std::vector<Eigen::VectorXd> r;
  for (int j = 0; j <= order; ++j) {
    Eigen::VectorXd v = endpoint_derivative_or_zero(num, side, j);
    for (int h = 0; h < j; ++h) {
      v -= binomial(j, h) * endpoint_derivative_or_zero(den, side, j - h)[0] * r[h];
    }
    r.push_back(v / d0);
  }
  return r.back();
}

Eigen::MatrixXd RationalTarget::moments(int m, const JacobiParams& params) const {
  const int nodes = nodes_ > 0 ? nodes_ : default_rational_nodes(rat_.degree(), m);
  return rational_moments(rat_, m, params, nodes);
}

double kij(int m, int k, int l, const JacobiParams& params, int i, int j) {
  const ConstraintSpec spec(m, k, l);
  if (!spec.contains(i)) throw std::out_of_range("kij: i outside [k, m-l]");
  if (j < 0 || j > m || spec.contains(j)) {
    throw std::out_of_range("kij: j must be a boundary index (j < k or j > m-l)");
  }
  const double a = params.alpha() + l + 1.0;
  const double b = params.beta() + k + 1.0;
  const int N = m - k - l;
  if (m <= kPlainArithmeticLimit) {
    return binomial(m, j) / binomial(m, i) * sign_of_power(i - k) * pochhammer(k - j, N + 1) /
           ((i - j) * factorial(i - k) * factorial(m - l - i)) * pochhammer(a, m - j) *
           pochhammer(b, j) / (pochhammer(a, m - i) * pochhammer(b, i));
  }
  SignedLog v = pochhammer_log(k - j, N + 1) * pochhammer_log(a, m - j) * pochhammer_log(b, j) /
                (pochhammer_log(a, m - i) * pochhammer_log(b, i) * SignedLog::from(i - j));
  v.log_abs += log_binomial(m, j) - log_binomial(m, i) - std::lgamma(i - k + 1.0) -
               std::lgamma(m - l - i + 1.0);
  v.sign *= static_cast<int>(sign_of_power(i - k));
  return v.value();
}

BezierCurve solve_constrained(const ApproxProblem& problem, const CTable& table) {
  const ConstraintSpec& spec = problem.spec;
  if (!(table.spec() == spec) || !(table.params() == problem.params)) {
    throw std::invalid_argument("solve_constrained: table built for a different (m, k, l, alpha, beta)");
  }
  const int m = spec.n(), k = spec.k(), l = spec.l();
  const int d = problem.target.dimension();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m + 1, d);

  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd v = problem.target.derivative(Side::left, i) / falling_ratio(m, i);
    for (int j = 0; j < i; ++j) {
      v -= sign_of_power(i + j) * binomial(i, j) * p.row(j).transpose();
    }
    p.row(i) = v.transpose();
  }
  for (int i = 0; i < l; ++i) {
    Eigen::VectorXd v =
        sign_of_power(i) * problem.target.derivative(Side::right, i) / falling_ratio(m, i);
    for (int j = 1; j <= i; ++j) {
      v -= sign_of_power(j) * binomial(i, j) * p.row(m - i + j).transpose();
    }
    p.row(m - i) = v.transpose();
  }

  const Eigen::MatrixXd moments = problem.target.moments(m, problem.params);
  const int dim = spec.dimension();
  const Eigen::MatrixXd interior = table.values() * moments.middleRows(k, dim);
  for (int i = k; i <= m - l; ++i) {
    Eigen::RowVectorXd v = interior.row(i - k);
    for (int j = 0; j <= m; ++j) {
      if (spec.contains(j)) continue;
      v -= kij(m, k, l, problem.params, i, j) * p.row(j);
    }
    p.row(i) = v;
  }
  return BezierCurve(std::move(p));
}

BezierCurve degree_reduce(const BezierCurve& input, int m, int k, int l,
                          const JacobiParams& params) {
  if (m > input.degree()) {
    throw std::domain_error("degree_reduce: target degree " + std::to_string(m) +
                            " exceeds input degree " + std::to_string(input.degree()));
  }
  const ConstraintSpec spec(m, k, l);
  const PolynomialTarget target(input);
  return solve_constrained(ApproxProblem{target, spec, params}, ctable_build(spec, params));
}

Eigen::VectorXd squared_l2_distance(const BezierCurve& f, const BezierCurve& g,
                                    const JacobiParams& params) {
  if (f.dimension() != g.dimension()) {
    throw std::invalid_argument("squared_l2_distance: dimension mismatch");
  }
  const int n = std::max(f.degree(), g.degree());
  const Eigen::MatrixXd diff = degree_elevate(f, n - f.degree()).points() -
                               degree_elevate(g, n - g.degree()).points();
  const Eigen::MatrixXd gram = bernstein_gram(n, n, params);
  return (diff.transpose() * gram * diff).diagonal();
}

Eigen::MatrixXd rational_moments(const RationalBezier& rat, int m, const JacobiParams& params,
                                 int nodes) {
  if (nodes < 1) throw std::invalid_argument("rational_moments: need at least one node");
  if (m < 0) throw std::invalid_argument("rational_moments: negative degree");
  const int n = rat.degree();
  const QuadratureRule rule = gauss_jacobi(nodes, params);
  // I_ij = <B^n_i, B^m_j / sum_h w_h B^n_h>
  Eigen::MatrixXd integrals = Eigen::MatrixXd::Zero(n + 1, m + 1);
  for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
    const double x = rule.nodes[q];
    const Eigen::VectorXd bn = bernstein_values(n, x);
    const Eigen::VectorXd bm = bernstein_values(m, x);
    const double den = rat.weights().dot(bn);
    integrals.noalias() += (rule.weights[q] / den) * bn * bm.transpose();
  }
  return integrals.transpose() * (rat.weights().asDiagonal() * rat.points());
}

BezierCurve rational_approx(const RationalBezier& rat, int m, int k, int l,
                            const JacobiParams& params, int nodes) {
  if (k > kMaxRationalDerivativeOrder + 1 || l > kMaxRationalDerivativeOrder + 1) {
    throw std::domain_error("rational_approx: constraint orders above 3 are not supported");
  }
  const ConstraintSpec spec(m, k, l);
  const RationalTarget target(rat, nodes);
  return solve_constrained(ApproxProblem{target, spec, params}, ctable_build(spec, params));
}

// ---------------------------------------------------------------------------
// Quadratic clipping

namespace {

using Real = long double;
using Coeffs = std::vector<Real>;

// Coefficients of the piece over [0, t] (left) or [t, 1] (right).
Coeffs split(const Coeffs& c, Real t, bool keep_left) {
  Coeffs work = c;
  const std::size_t n = c.size() - 1;
  Coeffs out(c.size());
  for (std::size_t r = 0; r <= n; ++r) {
    if (keep_left) {
      out[r] = work[0];
    } else {
      out[n - r] = work[n - r];
    }
    for (std::size_t i = 0; i + r < n; ++i) work[i] = (1 - t) * work[i] + t * work[i + 1];
  }
  return out;
}

Coeffs restrict_to(const Coeffs& c, Real a, Real b) {
  Coeffs left = b < 1 ? split(c, b, true) : c;
  return a > 0 ? split(left, a / b, false) : left;
}

Coeffs elevate(Coeffs c, std::size_t target_degree) {
  while (c.size() - 1 < target_degree) {
    const std::size_t n = c.size() - 1;
    Coeffs e(n + 2);
    e[0] = c[0];
    e[n + 1] = c[n];
    for (std::size_t i = 1; i <= n; ++i) {
      const Real t = static_cast<Real>(i) / static_cast<Real>(n + 1);
      e[i] = t * c[i - 1] + (1 - t) * c[i];
    }
    c = std::move(e);
  }
  return c;
}

void quadratic_roots(Real c2, Real c1, Real c0, std::vector<Real>& out) {
  if (c2 == 0) {
    if (c1 != 0) out.push_back(-c0 / c1);
    return;
  }
  const Real disc = c1 * c1 - 4 * c2 * c0;
  if (disc < 0) return;
  const Real q = -0.5L * (c1 + std::copysign(std::sqrt(disc), c1));
  out.push_back(q / c2);
  if (q != 0) out.push_back(c0 / q);
}

// Components of { t in [0,1] : |q(t)| <= delta } for the quadratic with
// Bernstein coefficients b0, b1, b2.
std::vector<std::pair<Real, Real>> strip_components(Real b0, Real b1, Real b2, Real delta) {
  const Real c0 = b0, c1 = 2 * (b1 - b0), c2 = b0 - 2 * b1 + b2;
  auto q = [&](Real t) { return c0 + t * (c1 + t * c2); };
  auto inside = [&](Real t) { return std::fabs(q(t)) <= delta; };

  std::vector<Real> cand;
  quadratic_roots(c2, c1, c0 - delta, cand);
  quadratic_roots(c2, c1, c0 + delta, cand);
  std::vector<Real> pts{0, 1};
  for (Real t : cand) {
    if (t > 0 && t < 1) pts.push_back(t);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<std::pair<Real, Real>> comps;
  auto add = [&](Real s, Real e) {
    if (!comps.empty() && comps.back().second >= s) {
      comps.back().second = std::max(comps.back().second, e);
    } else {
      comps.emplace_back(s, e);
    }
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (inside(pts[i])) add(pts[i], pts[i]);
    if (i + 1 < pts.size() && inside(0.5L * (pts[i] + pts[i + 1]))) add(pts[i], pts[i + 1]);
  }
  // Root-finding round-off on the breakpoints.
  constexpr Real pad = 64 * std::numeric_limits<Real>::epsilon();
  for (auto& [s, e] : comps) {
    s = std::max<Real>(0, s - pad);
    e = std::min<Real>(1, e + pad);
  }
  return comps;
}

}  // namespace

std::vector<RootEnclosure> clip_roots(const BezierCurve& poly, double tol, int max_iter) {
  if (poly.dimension() != 1) throw std::invalid_argument("clip_roots: polynomial must be scalar");
  if (!(tol > 0.0)) throw std::invalid_argument("clip_roots: tolerance must be positive");
  if (max_iter < 0) throw std::invalid_argument("clip_roots: max_iter must be non-negative");

  const int n = poly.degree();
  Coeffs orig(n + 1);
  Real scale = 0;
  for (int i = 0; i <= n; ++i) {
    orig[i] = poly.points()(i, 0);
    scale = std::max(scale, std::fabs(orig[i]));
  }
  if (scale == 0) return {RootEnclosure{0.0, 1.0, false}};

  // Absolute round-off budget for restricted control points.
  const Real noise = 16 * (n + 1) * std::numeric_limits<Real>::epsilon() * scale;
  // Leaves stop at half the tolerance so that two leaves meeting at a root
  // still merge into one enclosure of width <= tol.
  const Real leaf = 0.5L * tol;
  const std::size_t work_degree = static_cast<std::size_t>(std::max(n, 2));

  struct Task {
    Real a, b;
    int depth;
  };
  std::vector<Task> stack{{0, 1, 0}};
  std::vector<RootEnclosure> found;

  while (!stack.empty()) {
    const Task task = stack.back();
    stack.pop_back();
    const Coeffs local = elevate(restrict_to(orig, task.a, task.b), work_degree);

    const bool positive = std::all_of(local.begin(), local.end(), [&](Real v) { return v > noise; });
    const bool negative = std::all_of(local.begin(), local.end(), [&](Real v) { return v < -noise; });
    if (positive || negative) continue;

    const Real width = task.b - task.a;
    if (width <= leaf || task.depth >= max_iter) {
      found.push_back({static_cast<double>(task.a), static_cast<double>(task.b), width <= leaf});
      continue;
    }

    Eigen::MatrixXd local_pts(local.size(), 1);
    for (std::size_t i = 0; i < local.size(); ++i) local_pts(static_cast<Eigen::Index>(i), 0) = static_cast<double>(local[i]);
    const BezierCurve quad = degree_reduce(BezierCurve(local_pts), 2, 0, 0, JacobiParams(0.0, 0.0));
    const Coeffs qc{quad.points()(0, 0), quad.points()(1, 0), quad.points()(2, 0)};
    const Coeffs qe = elevate(qc, work_degree);
    Real delta = 0;
    for (std::size_t i = 0; i < local.size(); ++i) delta = std::max(delta, std::fabs(qe[i] - local[i]));
    delta += noise;

    const auto comps = strip_components(qc[0], qc[1], qc[2], delta);
    auto bisect = [&] {
      const Real mid = task.a + 0.5L * width;
      stack.push_back({mid, task.b, task.depth + 1});
      stack.push_back({task.a, mid, task.depth + 1});
    };

    if (comps.empty()) {
      // The strip says no root; trust a sign change at the ends over it.
      if ((local.front() > noise && local.back() < -noise) ||
          (local.front() < -noise && local.back() > noise)) {
        bisect();
      }
      continue;
    }
    if (comps.size() == 1 && comps.front().second - comps.front().first > 0.9L) {
      bisect();
      continue;
    }
    for (auto it = comps.rbegin(); it != comps.rend(); ++it) {
      stack.push_back({task.a + it->first * width, task.a + it->second * width, task.depth + 1});
    }
  }

  std::sort(found.begin(), found.end(),
            [](const RootEnclosure& x, const RootEnclosure& y) { return x.lo < y.lo; });
  std::vector<RootEnclosure> merged;
  for (const RootEnclosure& e : found) {
    if (!merged.empty() && e.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, e.hi);
      merged.back().converged = merged.back().converged && e.converged;
    } else {
      merged.push_back(e);
    }
  }
  return merged;
}

}  // namespace dualbern
