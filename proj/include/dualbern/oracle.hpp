#pragma once

// Brute-force reference implementations used to check the recursive
// C-table and the constrained least-squares solver. Nothing in the main
// library depends on this header.

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "dualbern/dual_core.hpp"
#include "dualbern/specfun.hpp"

namespace dualbern::oracle {

/// Arbitrary-precision fraction, always in lowest terms with positive denominator.
using ExactRational = boost::multiprecision::cpp_rational;

class ExactMatrix {
public:
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  ExactRational& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const ExactRational& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  static ExactMatrix identity(int n);
  friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y);
  friend bool operator==(const ExactMatrix& x, const ExactMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

private:
  int rows_;
  int cols_;
  std::vector<ExactRational> data_;
};

/// Largest n - k - l accepted by the exact routines.
inline constexpr int kMaxExactDimension = 16;

/// The binary value of a finite double, as a fraction.
ExactRational exact_from_double(double v);

/// Gram matrix of B^n_k..B^n_{n-l} divided by B(alpha+1, beta+1).
ExactMatrix gram_matrix_exact(const ConstraintSpec& spec, const ExactRational& alpha,
                              const ExactRational& beta);

/// Gauss-Jordan inverse; throws std::logic_error on a singular matrix.
ExactMatrix invert_exact(const ExactMatrix& m);

/// Inverse of gram_matrix_exact, i.e. B(alpha+1, beta+1) * C_ij over the
/// constrained index range.
ExactMatrix dual_table_exact(const ConstraintSpec& spec, const ExactRational& alpha,
                             const ExactRational& beta);

/// The library's cross-rule recurrence replayed in rational arithmetic,
/// scaled like dual_table_exact.
ExactMatrix ctable_recurrence_exact(const ConstraintSpec& spec, const ExactRational& alpha,
                                    const ExactRational& beta);

/// Divides by B(alpha+1, beta+1) and rounds to double.
Eigen::MatrixXd to_double_table(const ExactMatrix& scaled, const JacobiParams& params);

/// Floating Gram inverse for arbitrary (alpha, beta).
Eigen::MatrixXd dual_table_float(const ConstraintSpec& spec, const JacobiParams& params);

/// First row C_{k,j} from the closed form W (-1)^j U_j / ((alpha+2l+1)_{n-l-j} (k+beta+2)_j).
std::vector<double> first_row_closed_form(const ConstraintSpec& spec, const JacobiParams& params);

/// Boundary control points (rows < k and > m-l) solving the endpoint
/// derivative conditions as one dense linear system. Other rows are zero.
Eigen::MatrixXd boundary_from_derivatives(const ConstraintSpec& spec,
                                          const Eigen::MatrixXd& left_derivatives,
                                          const Eigen::MatrixXd& right_derivatives);

/// Minimiser of ||f - P||^2 over P with the given boundary rows fixed:
/// solves G_II p_I = moments_I - G_IB p_B with a pivoted factorisation.
/// Throws std::runtime_error carrying the condition estimate when the
/// interior Gram block is numerically singular.
Eigen::MatrixXd normal_equations_solve(const Eigen::MatrixXd& moments, const Eigen::MatrixXd& gram,
                                       const ConstraintSpec& spec,
                                       const Eigen::MatrixXd& boundary);

}  // namespace dualbern::oracle
