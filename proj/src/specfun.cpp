#include "dualbern/specfun.hpp"

#include <algorithm>
#include <string>

#include "dualbern/detail/hypergeometric.hpp"

namespace dualbern {

JacobiParams::JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw std::domain_error("JacobiParams: alpha and beta must exceed -1 (got alpha=" +
                            std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
  }
}

SignedLog SignedLog::from(double v) {
  if (v == 0.0) return {0.0, 0};
  return {std::log(std::fabs(v)), v < 0 ? -1 : 1};
}

double pochhammer(double c, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= c + j;
  return r;
}

SignedLog pochhammer_log(double c, int k) {
  // (c)_k = Gamma(c+k)/Gamma(c) when the whole range is positive.
  if (c > 0.0 && k > kPlainArithmeticLimit) {
    return {std::lgamma(c + k) - std::lgamma(c), 1};
  }
  SignedLog r;
  for (int j = 0; j < k; ++j) r *= SignedLog::from(c + j);
  return r;
}

double log_beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("beta_fn: arguments must be positive");
  }
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta_fn(double a, double b) {
  // Direct gamma ratio is a few ulps more accurate while nothing overflows.
  if (a > 0.0 && b > 0.0 && a + b < 100.0) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  return std::exp(log_beta_fn(a, b));
}

double factorial(int n) {
  if (n <= kPlainArithmeticLimit) return pochhammer(1.0, n);
  return std::exp(std::lgamma(n + 1.0));
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) {
    throw std::out_of_range("binomial: k outside [0, n]");
  }
  if (n > kPlainArithmeticLimit) return std::exp(log_binomial(n, k));
  k = std::min(k, n - k);
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return std::round(r);
}

double binomial_real(double x, int r) {
  double v = 1.0;
  for (int j = 1; j <= r; ++j) v *= (x - r + j) / j;
  return v;
}

double hahn_q(int m, double x, double a, double b, int N) {
  if (m < 0 || m > N) {
    throw std::domain_error("hahn_q: degree m must satisfy 0 <= m <= N");
  }
  return static_cast<double>(detail::hahn_sum<long double>(m, x, a, b, N));
}

double shifted_jacobi(int m, double x, const JacobiParams& params) {
  return static_cast<double>(
      detail::jacobi_sum<long double>(m, x, params.alpha(), params.beta()));
}

double sigma_weight(int m, double sigma) {
  if (m == 0) return 1.0;
  return (2.0 * m + sigma) * pochhammer(sigma + 1.0, m - 1);
}

double shifted_jacobi_norm2(int m, const JacobiParams& params) {
  const double a = params.alpha();
  const double b = params.beta();
  double ratio = 1.0;
  for (int j = 0; j < m; ++j) ratio *= (a + 1.0 + j) * (b + 1.0 + j) / (j + 1.0);
  return beta_fn(a + 1.0, b + 1.0) * ratio / sigma_weight(m, params.sigma());
}

}  // namespace dualbern
