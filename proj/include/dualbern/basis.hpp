#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "dualbern/dual_core.hpp"
#include "dualbern/specfun.hpp"

namespace dualbern {

/// Bernstein-form polynomial curve of degree n: control points are the rows
/// of an (n+1) x d matrix. d = 1 for scalar polynomials.
class BezierCurve {
public:
  BezierCurve() : points_(Eigen::MatrixXd::Zero(1, 1)) {}
  explicit BezierCurve(Eigen::MatrixXd points);
  static BezierCurve scalar(const std::vector<double>& coeffs);

  int degree() const { return static_cast<int>(points_.rows()) - 1; }
  int dimension() const { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXd& points() const { return points_; }
  Eigen::VectorXd point(int i) const { return points_.row(i).transpose(); }
  /// Coefficients of one coordinate.
  Eigen::VectorXd coordinate(int d) const { return points_.col(d); }

private:
  Eigen::MatrixXd points_;
};

/// Polynomial sum_j coeffs[j] R_j^(alpha,beta)(x).
struct JacobiExpansion {
  JacobiParams params;
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// B^n_i(x) = C(n,i) x^i (1-x)^(n-i).
double bernstein(int n, int i, double x);

/// All n+1 Bernstein basis values at x, built by the triangular recurrence.
Eigen::VectorXd bernstein_values(int n, double x);

/// Evaluation by repeated linear interpolation.
Eigen::VectorXd de_casteljau_eval(const BezierCurve& curve, double x);
double de_casteljau_eval(const std::vector<double>& coeffs, double x);

/// Same polynomial written in degree curve.degree() + r.
BezierCurve degree_elevate(const BezierCurve& curve, int r);

/// Control polygons of the pieces over [0,t] and [t,1].
std::pair<BezierCurve, BezierCurve> subdivide(const BezierCurve& curve, double t);

/// Bernstein coefficients in degree n of a Jacobi expansion (n >= its degree).
BezierCurve jacobi_to_bernstein(const JacobiExpansion& exp, int n);

/// Shifted Jacobi coefficients of a scalar Bernstein-form polynomial.
JacobiExpansion bernstein_to_jacobi(const BezierCurve& curve, const JacobiParams& params);

double evaluate(const JacobiExpansion& exp, double x);

/// Coefficients of the dual polynomial D^n_i in the R_j^(alpha,beta) basis.
JacobiExpansion dual_jacobi_coeffs(int n, int i, const JacobiParams& params);

/// D^n_i(x) through the (i+1)-term sum of Jacobi polynomials with
/// shifted beta parameter.
double dual_short_eval(int n, int i, const JacobiParams& params, double x);

/// D^(n,k,l)_i(x) = U_i x^k (1-x)^l D^(n-k-l)_(i-k)(x; alpha+2l, beta+2k).
double constrained_dual_eval(const ConstraintSpec& spec, int i, const JacobiParams& params,
                             double x);

/// <B^n_i, B^m_j> in closed form.
double bernstein_inner(int n, int i, int m, int j, const JacobiParams& params);

/// (n+1) x (m+1) matrix of <B^n_i, B^m_j>.
Eigen::MatrixXd bernstein_gram(int n, int m, const JacobiParams& params);

}  // namespace dualbern
