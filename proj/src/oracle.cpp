#include "dualbern/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dualbern/basis.hpp"
#include "dualbern/detail/ctable_recurrence.hpp"

namespace dualbern::oracle {

namespace {

ExactRational poch(const ExactRational& c, int k) {
  ExactRational r = 1;
  for (int j = 0; j < k; ++j) r *= c + j;
  return r;
}

ExactRational binom(int n, int k) {
  ExactRational r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

void check_size(const ConstraintSpec& spec) {
  if (spec.dimension() - 1 > kMaxExactDimension) {
    throw std::length_error("exact oracle limited to n - k - l <= " +
                            std::to_string(kMaxExactDimension));
  }
}

void check_params(const ExactRational& alpha, const ExactRational& beta) {
  if (alpha <= -1 || beta <= -1) throw std::domain_error("exact oracle: alpha, beta must exceed -1");
}

struct ExactGrid {
  ExactMatrix& m;
  ExactRational& operator()(int r, int c) { return m(r, c); }
};

}  // namespace

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix id(n, n);
  for (int i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
  if (x.cols() != y.rows()) throw std::invalid_argument("ExactMatrix: shape mismatch");
  ExactMatrix out(x.rows(), y.cols());
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < y.cols(); ++j) {
      ExactRational s = 0;
      for (int h = 0; h < x.cols(); ++h) s += x(i, h) * y(h, j);
      out(i, j) = s;
    }
  }
  return out;
}

ExactRational exact_from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("exact_from_double: non-finite value");
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  // 53-bit integer mantissa
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  ExactRational r = scaled;
  const int shift = exp - 53;
  boost::multiprecision::cpp_int two_pow = 1;
  two_pow <<= std::abs(shift);
  return shift >= 0 ? r * ExactRational(two_pow) : r / ExactRational(two_pow);
}

ExactMatrix gram_matrix_exact(const ConstraintSpec& spec, const ExactRational& alpha,
                              const ExactRational& beta) {
  check_size(spec);
  check_params(alpha, beta);
  const int n = spec.n(), k = spec.k(), dim = spec.dimension();
  const ExactRational denom = poch(alpha + beta + 2, 2 * n);
  ExactMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const int i = k + r, j = k + c;
      g(r, c) = binom(n, i) * binom(n, j) * poch(alpha + 1, 2 * n - i - j) *
                poch(beta + 1, i + j) / denom;
    }
  }
  return g;
}

ExactMatrix invert_exact(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("invert_exact: matrix not square");
  const int n = m.rows();
  ExactMatrix a = m;
  ExactMatrix inv = ExactMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) throw std::logic_error("invert_exact: singular matrix");
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    }
    const ExactRational p = a(col, col);
    for (int c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const ExactRational f = a(r, col);
      for (int c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

ExactMatrix dual_table_exact(const ConstraintSpec& spec, const ExactRational& alpha,
                             const ExactRational& beta) {
  return invert_exact(gram_matrix_exact(spec, alpha, beta));
}

ExactMatrix ctable_recurrence_exact(const ConstraintSpec& spec, const ExactRational& alpha,
                                    const ExactRational& beta) {
  check_size(spec);
  check_params(alpha, beta);
  const int n = spec.n(), k = spec.k(), l = spec.l(), N = spec.dimension() - 1;
  // B(alpha+1, beta+1) * C_{k,n-l}; the ratio of Beta functions is rational.
  const ExactRational beta_ratio =
      poch(alpha + beta + 2, 2 * k + 2 * l) / (poch(alpha + 1, 2 * l) * poch(beta + 1, 2 * k));
  ExactRational anchor = poch(alpha + beta + 2 * k + 2 * l + 2, N) * beta_ratio /
                         (binom(n, k) * binom(n, l) * poch(ExactRational(1), N));
  if (N % 2 != 0) anchor = -anchor;
  ExactMatrix table(spec.dimension(), spec.dimension());
  ExactGrid grid{table};
  detail::fill_ctable<ExactRational>(n, k, l, alpha, beta, anchor, grid, n - l);
  return table;
}

Eigen::MatrixXd to_double_table(const ExactMatrix& scaled, const JacobiParams& params) {
  const double inv_b = 1.0 / beta_fn(params.alpha() + 1.0, params.beta() + 1.0);
  Eigen::MatrixXd out(scaled.rows(), scaled.cols());
  for (int r = 0; r < scaled.rows(); ++r) {
    for (int c = 0; c < scaled.cols(); ++c) out(r, c) = scaled(r, c).convert_to<double>() * inv_b;
  }
  return out;
}

Eigen::MatrixXd dual_table_float(const ConstraintSpec& spec, const JacobiParams& params) {
  const Eigen::MatrixXd gram = bernstein_gram(spec.n(), spec.n(), params)
                                   .block(spec.k(), spec.k(), spec.dimension(), spec.dimension());
  return gram.fullPivLu().inverse();
}

std::vector<double> first_row_closed_form(const ConstraintSpec& spec, const JacobiParams& params) {
  const int n = spec.n(), k = spec.k(), l = spec.l(), N = spec.dimension() - 1;
  const double a = params.alpha(), b = params.beta();
  const double w = (k % 2 == 0 ? 1.0 : -1.0) / binomial(n, k) *
                   pochhammer(params.sigma() + 2 * k + 2 * l + 1, N) * pochhammer(k + b + 2, n - l) /
                   (beta_fn(a + 2 * l + 1, b + 2 * k + 1) * factorial(N));
  std::vector<double> row;
  for (int j = k; j <= n - l; ++j) {
    row.push_back(w * (j % 2 == 0 ? 1.0 : -1.0) * u_factor(spec, j) /
                  (pochhammer(a + 2 * l + 1, n - l - j) * pochhammer(k + b + 2, j)));
  }
  return row;
}

Eigen::MatrixXd boundary_from_derivatives(const ConstraintSpec& spec,
                                          const Eigen::MatrixXd& left_derivatives,
                                          const Eigen::MatrixXd& right_derivatives) {
  const int m = spec.n(), k = spec.k(), l = spec.l();
  const int d = static_cast<int>(k > 0 ? left_derivatives.cols() : right_derivatives.cols());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m + 1, d);
  if (k + l == 0) return out;

  std::vector<int> unknowns;
  for (int j = 0; j < k; ++j) unknowns.push_back(j);
  for (int j = m - l + 1; j <= m; ++j) unknowns.push_back(j);

  // Derivative functionals of the Bernstein basis, by differentiating the
  // power form of each B^m_j.
  auto basis_derivative = [&](int j, int order, double x) {
    // B^m_j(x) = C(m,j) sum_r (-1)^r C(m-j, r) x^(j+r)
    double s = 0.0;
    for (int r = 0; r <= m - j; ++r) {
      const int p = j + r;
      if (p < order) continue;
      const double coef = binomial(m, j) * binomial(m - j, r) * (r % 2 == 0 ? 1.0 : -1.0);
      s += coef * pochhammer(p - order + 1.0, order) * std::pow(x, p - order);
    }
    return s;
  };

  const int c = k + l;
  Eigen::MatrixXd sys(c, c);
  Eigen::MatrixXd rhs(c, d);
  for (int row = 0; row < c; ++row) {
    const bool left = row < k;
    const int order = left ? row : row - k;
    for (int col = 0; col < c; ++col) sys(row, col) = basis_derivative(unknowns[col], order, left ? 0.0 : 1.0);
    rhs.row(row) = left ? left_derivatives.row(order) : right_derivatives.row(order);
  }
  const Eigen::MatrixXd sol = sys.fullPivLu().solve(rhs);
  for (int u = 0; u < c; ++u) out.row(unknowns[u]) = sol.row(u);
  return out;
}

Eigen::MatrixXd normal_equations_solve(const Eigen::MatrixXd& moments, const Eigen::MatrixXd& gram,
                                       const ConstraintSpec& spec,
                                       const Eigen::MatrixXd& boundary) {
  const int m = spec.n(), k = spec.k(), dim = spec.dimension();
  if (gram.rows() != m + 1 || gram.cols() != m + 1 || moments.rows() != m + 1 ||
      boundary.rows() != m + 1 || boundary.cols() != moments.cols()) {
    throw std::invalid_argument("normal_equations_solve: inconsistent dimensions");
  }
  Eigen::MatrixXd fixed = boundary;
  fixed.middleRows(k, dim).setZero();
  const Eigen::MatrixXd g_ii = gram.block(k, k, dim, dim);
  const Eigen::MatrixXd rhs = moments.middleRows(k, dim) - gram.middleRows(k, dim) * fixed;

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(g_ii);
  const auto& sv = svd.singularValues();
  const double cond = sv[0] / sv[sv.size() - 1];
  if (!std::isfinite(cond) || cond > 1e14) {
    throw std::runtime_error("normal_equations_solve: Gram block ill-conditioned (cond ~ " +
                             std::to_string(cond) + ")");
  }
  Eigen::MatrixXd out = fixed;
  out.middleRows(k, dim) = g_ii.colPivHouseholderQr().solve(rhs);
  return out;
}

}  // namespace dualbern::oracle
