#pragma once

#include <Eigen/Core>
#include <vector>

#include "dualbern/specfun.hpp"

namespace dualbern {

/// Degree n with k vanishing derivatives at 0 and l at 1; requires k + l <= n.
/// The constrained space is spanned by B^n_k, ..., B^n_{n-l}.
class ConstraintSpec {
public:
  ConstraintSpec() = default;
  ConstraintSpec(int n, int k = 0, int l = 0);

  int n() const { return n_; }
  int k() const { return k_; }
  int l() const { return l_; }
  int first() const { return k_; }
  int last() const { return n_ - l_; }
  /// n - k - l + 1
  int dimension() const { return n_ - k_ - l_ + 1; }
  bool contains(int i) const { return i >= k_ && i <= n_ - l_; }

  bool operator==(const ConstraintSpec&) const = default;

private:
  int n_ = 0;
  int k_ = 0;
  int l_ = 0;
};

/// Bezier coefficients C_ij of the constrained dual Bernstein basis:
///   D^(n,k,l)_i = sum_{j=k}^{n-l} C_ij B^n_j,   k <= i <= n-l.
/// Indices passed to operator() are the logical ones (k..n-l).
class CTable {
public:
  CTable(ConstraintSpec spec, JacobiParams params, Eigen::MatrixXd values);

  const ConstraintSpec& spec() const { return spec_; }
  const JacobiParams& params() const { return params_; }
  const Eigen::MatrixXd& values() const { return values_; }

  double operator()(int i, int j) const { return values_(i - spec_.k(), j - spec_.k()); }
  /// Bounds-checked access; throws std::out_of_range.
  double at(int i, int j) const;
  /// Row i as Bezier coefficients over j = k..n-l.
  Eigen::VectorXd row(int i) const;

private:
  ConstraintSpec spec_;
  JacobiParams params_;
  Eigen::MatrixXd values_;
};

/// U_i = C(n-k-l, i-k) / C(n, i).
double u_factor(const ConstraintSpec& spec, int i);

/// First row C_{k,k..n-l}: anchor C_{k,n-l} followed by the backward ratio
/// recursion in j.
std::vector<double> ctable_first_row(const ConstraintSpec& spec, const JacobiParams& params);

/// Full table by the five-point cross rule, O(n^2). With use_symmetry and
/// alpha == beta, k == l only the upper half of the rows is computed and the
/// rest is mirrored through C_ij = C_{n-i,n-j}.
CTable ctable_build(const ConstraintSpec& spec, const JacobiParams& params,
                    bool use_symmetry = false);

/// Unconstrained coefficient c_ij(n) as a sum over products of Hahn polynomials.
double cij_direct(int n, int i, int j, const JacobiParams& params);

/// Unconstrained coefficient c_ij(n) from the short Jacobi form of the dual
/// polynomial (an (i+1)-term Hahn sum).
double cij_shifted(int n, int i, int j, const JacobiParams& params);

/// Unconstrained coefficient c_ij(n) as a min(i,j)+1 term sum of real-argument binomials.
/// Only used as an independent cross-check.
double cij_ra_oracle(int n, int i, int j, const JacobiParams& params);

}  // namespace dualbern
