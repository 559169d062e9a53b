#include "dualbern/dual_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dualbern/detail/ctable_recurrence.hpp"
#include "dualbern/detail/hypergeometric.hpp"

namespace dualbern {

namespace {

void check_unconstrained_index(int n, int i, int j) {
  if (n < 0 || i < 0 || i > n || j < 0 || j > n) {
    throw std::out_of_range("dual coefficient index outside [0, n]");
  }
}

double sign_of_power(int e) { return e % 2 == 0 ? 1.0 : -1.0; }

// C_{k,n-l} = (-1)^N (sigma+2k+2l+1)_N / (C(n,k) C(n,l) B(alpha+2l+1, beta+2k+1) N!)
long double first_row_anchor(const ConstraintSpec& spec, const JacobiParams& params) {
  const int n = spec.n(), k = spec.k(), l = spec.l();
  const int N = n - k - l;
  const double a = params.alpha(), b = params.beta();
  const double s = params.sigma() + 2.0 * (k + l) + 1.0;
  if (n <= kPlainArithmeticLimit) {
    return sign_of_power(N) * pochhammer(s, N) /
           (binomial(n, k) * binomial(n, l) * beta_fn(a + 2 * l + 1, b + 2 * k + 1) * factorial(N));
  }
  SignedLog v = pochhammer_log(s, N);
  v.log_abs -= log_binomial(n, k) + log_binomial(n, l) + log_beta_fn(a + 2 * l + 1, b + 2 * k + 1) +
               std::lgamma(N + 1.0);
  v.sign *= N % 2 == 0 ? 1 : -1;
  // long double keeps large-degree tables finite until the final narrowing
  return v.sign * std::exp(static_cast<long double>(v.log_abs));
}

// Overflowing conversions go through a slow hardware path; saturate by hand.
double narrow(long double v) {
  constexpr long double top = std::numeric_limits<double>::max();
  if (v > top) return std::numeric_limits<double>::infinity();
  if (v < -top) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(v);
}

}  // namespace

ConstraintSpec::ConstraintSpec(int n, int k, int l) : n_(n), k_(k), l_(l) {
  if (n < 0 || k < 0 || l < 0 || k + l > n) {
    throw std::domain_error("ConstraintSpec: need n, k, l >= 0 and k + l <= n (got n=" +
                            std::to_string(n) + ", k=" + std::to_string(k) +
                            ", l=" + std::to_string(l) + ")");
  }
}

CTable::CTable(ConstraintSpec spec, JacobiParams params, Eigen::MatrixXd values)
    : spec_(spec), params_(params), values_(std::move(values)) {
  if (values_.rows() != spec_.dimension() || values_.cols() != spec_.dimension()) {
    throw std::invalid_argument("CTable: value matrix does not match the constraint spec");
  }
}

double CTable::at(int i, int j) const {
  if (!spec_.contains(i) || !spec_.contains(j)) {
    throw std::out_of_range("CTable: index outside [k, n-l]");
  }
  return (*this)(i, j);
}

Eigen::VectorXd CTable::row(int i) const {
  if (!spec_.contains(i)) throw std::out_of_range("CTable: row outside [k, n-l]");
  return values_.row(i - spec_.k()).transpose();
}

double u_factor(const ConstraintSpec& spec, int i) {
  if (!spec.contains(i)) throw std::out_of_range("u_factor: index outside [k, n-l]");
  const int N = spec.n() - spec.k() - spec.l();
  if (spec.n() <= kPlainArithmeticLimit) return binomial(N, i - spec.k()) / binomial(spec.n(), i);
  return std::exp(log_binomial(N, i - spec.k()) - log_binomial(spec.n(), i));
}

std::vector<double> ctable_first_row(const ConstraintSpec& spec, const JacobiParams& params) {
  const int k = spec.k();
  const int last = spec.last();
  const double a = params.alpha(), b = params.beta();
  std::vector<double> row(spec.dimension());
  row.back() = static_cast<double>(first_row_anchor(spec, params));
  for (int j = last - 1; j >= k; --j) {
    const double num = (j - spec.n()) * (j - k + 1.0) * (j + b + k + 2.0);
    const double den = (j + 1.0) * (j - spec.n() + spec.l()) * (j - a - spec.l() - spec.n());
    row[j - k] = num / den * row[j - k + 1];
  }
  return row;
}

CTable ctable_build(const ConstraintSpec& spec, const JacobiParams& params, bool use_symmetry) {
  const int n = spec.n(), k = spec.k(), l = spec.l();
  const int dim = spec.dimension();
  // The forward cross rule amplifies rounding with every row, so it runs in
  // extended precision and only over the upper half. The lower half comes
  // from the reflected problem, C_ij(k, l, alpha, beta) = C_{n-i,n-j}(l, k, beta, alpha).
  using Wide = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const int split = (k + spec.last()) / 2;
  Wide upper = Wide::Zero(dim, dim);
  detail::fill_ctable<long double>(n, k, l, params.alpha(), params.beta(),
                                   first_row_anchor(spec, params), upper, split);

  const bool mirror = use_symmetry && params.alpha() == params.beta() && k == l;
  Wide lower;
  if (!mirror && split < spec.last()) {
    const ConstraintSpec reflected(n, l, k);
    const JacobiParams swapped(params.beta(), params.alpha());
    lower = Wide::Zero(dim, dim);
    detail::fill_ctable<long double>(n, l, k, swapped.alpha(), swapped.beta(),
                                     first_row_anchor(reflected, swapped), lower, n - split - 1);
  }

  Eigen::MatrixXd values(dim, dim);
  for (int i = k; i <= spec.last(); ++i) {
    for (int j = k; j <= spec.last(); ++j) {
      long double v;
      if (i <= split) {
        v = upper(i - k, j - k);
      } else if (mirror) {
        v = upper(n - i - k, n - j - k);
      } else {
        v = lower(n - i - l, n - j - l);
      }
      values(i - k, j - k) = narrow(v);
    }
  }
  return CTable(spec, params, std::move(values));
}

double cij_direct(int n, int i, int j, const JacobiParams& params) {
  check_unconstrained_index(n, i, j);
  using W = long double;
  const double a = params.alpha(), b = params.beta(), s = params.sigma();
  // ratio = (beta+1)_m / (m! (alpha+1)_m), updated per m
  W ratio = 1;
  W sum = 0;
  for (int m = 0; m <= n; ++m) {
    if (m > 0) ratio *= (b + m) / (W(m) * (a + m));
    sum += sigma_weight(m, s) * ratio * detail::hahn_sum<W>(m, i, b, a, n) *
           detail::hahn_sum<W>(m, j, b, a, n);
  }
  return static_cast<double>(sum / beta_fn(a + 1.0, b + 1.0));
}

double cij_shifted(int n, int i, int j, const JacobiParams& params) {
  check_unconstrained_index(n, i, j);
  using W = long double;
  const double a = params.alpha(), b = params.beta(), s = params.sigma();
  W sum = 0;
  W t = 1;  // (-i)_h / (-alpha-n)_h
  for (int h = 0; h <= i; ++h) {
    if (h > 0) t *= (h - W(1) - i) / (h - W(1) - a - n);
    sum += t * detail::hahn_sum<W>(n - h, n - j, a, b + h + 1.0, n);
  }
  const double pref = sign_of_power(n) * pochhammer(s + 1.0, n) * pochhammer(-a - n, i) /
                      (beta_fn(a + 1.0, b + 1.0) * factorial(n) * pochhammer(b + 1.0, i));
  return static_cast<double>(pref * sum);
}

double cij_ra_oracle(int n, int i, int j, const JacobiParams& params) {
  check_unconstrained_index(n, i, j);
  const double a = params.alpha(), b = params.beta(), s = params.sigma();
  auto v = [&](int m, int h) {
    return binomial_real(n + b + h + 1.0, n - m) * binomial_real(n + a - h, m - h);
  };
  double sum = 0.0;
  for (int h = 0; h <= std::min(i, j); ++h) {
    // C(n+sigma+h, n+beta+h+1) with real arguments
    const double top = std::exp(std::lgamma(n + s + h + 1.0) - std::lgamma(n + b + h + 2.0) -
                                std::lgamma(a + 1.0));
    sum += (2.0 * h + b + 1.0) * top / binomial_real(n + a - h, n - h) * v(i, h) * v(j, h);
  }
  return sign_of_power(i + j) * sum / (binomial(n, i) * binomial(n, j));
}

}  // namespace dualbern
