#include "dualbern/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace dualbern {

QuadratureRule gauss_jacobi(int count, const JacobiParams& params) {
  if (count < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
  // Solved in extended precision; the rounded nodes and weights are then
  // accurate to a few ulps even for strongly skewed weights.
  using W = long double;
  using Vec = Eigen::Matrix<W, Eigen::Dynamic, 1>;
  const W a = params.alpha(), b = params.beta();

  // Recurrence on [-1,1] for (1-t)^a (1+t)^b, mapped to x = (1+t)/2.
  Vec diag(count), sub(std::max(count - 1, 1));
  for (int k = 0; k < count; ++k) {
    const W s = 2 * k + a + b;
    const W d = k == 0 ? (b - a) / (a + b + 2) : (b * b - a * a) / (s * (s + 2));
    diag[k] = (d + 1) / 2;
  }
  for (int k = 1; k < count; ++k) {
    const W s = 2 * k + a + b;
    W e2;
    if (k == 1) {
      // k (k+a+b) / (s-1) cancels; keeps a+b = -1 finite.
      e2 = 4 * (1 + a) * (1 + b) / ((s * s) * (s + 1));
    } else {
      e2 = 4 * k * (k + a) * (k + b) * (k + a + b) / ((s * s) * (s + 1) * (s - 1));
    }
    sub[k - 1] = std::sqrt(e2) / 2;
  }

  QuadratureRule rule;
  const W mu0 = std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 2);
  if (count == 1) {
    rule.nodes = diag.cast<double>();
    rule.weights = Eigen::VectorXd::Constant(1, static_cast<double>(mu0));
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<W, Eigen::Dynamic, Eigen::Dynamic>> solver;
  solver.computeFromTridiagonal(diag, sub.head(count - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_jacobi: tridiagonal eigensolver did not converge");
  }
  rule.nodes = solver.eigenvalues().cast<double>();
  rule.weights = (mu0 * solver.eigenvectors().row(0).transpose().array().square()).cast<double>();
  return rule;
}

}  // namespace dualbern
