#pragma once

#include <Eigen/Core>
#include <vector>

#include "dualbern/basis.hpp"
#include "dualbern/dual_core.hpp"
#include "dualbern/specfun.hpp"

namespace dualbern {

enum class Side { left, right };

/// P^(order) at x = 0 (left) or x = 1 (right) from the control points.
Eigen::VectorXd endpoint_derivative(const BezierCurve& curve, Side side, int order);

/// Everything the constrained least-squares solve needs to know about f:
/// endpoint derivatives and Bernstein moments <f, B^m_j>.
class MomentProvider {
public:
  virtual ~MomentProvider() = default;
  virtual int dimension() const = 0;
  virtual Eigen::VectorXd derivative(Side side, int order) const = 0;
  /// (m+1) x d matrix whose row j is <f, B^m_j>.
  virtual Eigen::MatrixXd moments(int m, const JacobiParams& params) const = 0;
};

/// f given in Bernstein form; moments are exact.
class PolynomialTarget final : public MomentProvider {
public:
  explicit PolynomialTarget(BezierCurve curve) : curve_(std::move(curve)) {}
  int dimension() const override { return curve_.dimension(); }
  Eigen::VectorXd derivative(Side side, int order) const override;
  Eigen::MatrixXd moments(int m, const JacobiParams& params) const override;

private:
  BezierCurve curve_;
};

/// R(x) = sum w_i r_i B^n_i(x) / sum w_i B^n_i(x) with positive weights.
class RationalBezier {
public:
  RationalBezier(Eigen::MatrixXd points, Eigen::VectorXd weights);

  int degree() const { return static_cast<int>(points_.rows()) - 1; }
  int dimension() const { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  /// Curve with control points w_i r_i.
  BezierCurve numerator() const;
  /// Scalar curve with coefficients w_i.
  BezierCurve denominator() const;
  Eigen::VectorXd evaluate(double x) const;

private:
  Eigen::MatrixXd points_;
  Eigen::VectorXd weights_;
};

/// Highest endpoint derivative order matched for rational targets.
inline constexpr int kMaxRationalDerivativeOrder = 2;

class RationalTarget final : public MomentProvider {
public:
  /// nodes <= 0 selects the default 4 (n + m) per moment request.
  RationalTarget(RationalBezier rat, int nodes = 0) : rat_(std::move(rat)), nodes_(nodes) {}
  int dimension() const override { return rat_.dimension(); }
  Eigen::VectorXd derivative(Side side, int order) const override;
  Eigen::MatrixXd moments(int m, const JacobiParams& params) const override;

private:
  RationalBezier rat_;
  int nodes_;
};

struct ApproxProblem {
  const MomentProvider& target;
  ConstraintSpec spec;  // (m, k, l)
  JacobiParams params;
};

/// K_ij = <B^m_j, D^(m,k,l)_i> for k <= i <= m-l and j outside [k, m-l].
double kij(int m, int k, int l, const JacobiParams& params, int i, int j);

/// Constrained L2-optimal P_m: boundary coefficients from the endpoint data,
/// interior ones from the dual basis table.
BezierCurve solve_constrained(const ApproxProblem& problem, const CTable& table);

/// Multi-degree reduction of a degree-n curve to degree m <= n, matching
/// derivatives of order < k at 0 and < l at 1.
BezierCurve degree_reduce(const BezierCurve& input, int m, int k, int l,
                          const JacobiParams& params);

/// Per-coordinate squared L2 distance between two Bernstein-form curves.
Eigen::VectorXd squared_l2_distance(const BezierCurve& f, const BezierCurve& g,
                                    const JacobiParams& params);

struct RootEnclosure {
  double lo = 0.0;
  double hi = 0.0;
  bool converged = true;

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

/// Roots in [0,1] of a scalar Bernstein-form polynomial by quadratic
/// clipping: reduce to degree 2 on the current interval, bound the reduction
/// error through the degree-elevated control points, keep the part of the
/// interval where the error strip meets zero. max_iter bounds the number of
/// clip/bisect steps along any branch.
std::vector<RootEnclosure> clip_roots(const BezierCurve& poly, double tol = 1e-10,
                                      int max_iter = 64);

/// Default Gauss-Jacobi node count for rational moments.
inline int default_rational_nodes(int n, int m) { return 4 * (n + m); }

/// (m+1) x d matrix of <R, B^m_j>, integrated numerically.
Eigen::MatrixXd rational_moments(const RationalBezier& rat, int m, const JacobiParams& params,
                                 int nodes);

/// Constrained L2 polynomial approximation of degree m to a rational curve.
/// k, l <= 3. nodes <= 0 selects the default.
BezierCurve rational_approx(const RationalBezier& rat, int m, int k, int l,
                            const JacobiParams& params, int nodes = 0);

}  // namespace dualbern
