#pragma once

#include <Eigen/Core>

#include "dualbern/specfun.hpp"

namespace dualbern {

/// Gauss-Jacobi rule on [0,1] for the weight (1-x)^alpha x^beta.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (Eigen::Index q = 0; q < nodes.size(); ++q) sum += weights[q] * f(nodes[q]);
    return sum;
  }
};

/// Golub-Welsch: eigen-decomposition of the symmetric tridiagonal Jacobi
/// matrix of the monic shifted Jacobi recurrence. Exact for degree 2*count-1.
QuadratureRule gauss_jacobi(int count, const JacobiParams& params);

}  // namespace dualbern
