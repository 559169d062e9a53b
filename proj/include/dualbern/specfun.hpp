#pragma once

#include <cmath>
#include <stdexcept>

namespace dualbern {

/// Weight exponents of the Jacobi inner product
/// <f,g> = \int_0^1 (1-x)^alpha x^beta f(x) g(x) dx.
class JacobiParams {
public:
  JacobiParams() = default;
  JacobiParams(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  /// alpha + beta + 1
  double sigma() const { return alpha_ + beta_ + 1.0; }

  bool operator==(const JacobiParams&) const = default;

private:
  double alpha_ = 0.0;
  double beta_ = 0.0;
};

/// Value kept as sign * exp(log_abs); used for prefactors that overflow doubles.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;

  SignedLog& operator*=(const SignedLog& o) {
    log_abs += o.log_abs;
    sign *= o.sign;
    return *this;
  }
  SignedLog& operator/=(const SignedLog& o) {
    log_abs -= o.log_abs;
    sign *= o.sign;
    return *this;
  }
  friend SignedLog operator*(SignedLog a, const SignedLog& b) { return a *= b; }
  friend SignedLog operator/(SignedLog a, const SignedLog& b) { return a /= b; }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  static SignedLog from(double v);
};

/// Indices above this use log-magnitude assembly of Pochhammer ratios.
inline constexpr int kPlainArithmeticLimit = 30;

/// Rising factorial (c)_k = c (c+1) ... (c+k-1); (c)_0 = 1.
double pochhammer(double c, int k);
SignedLog pochhammer_log(double c, int k);

/// Gamma(a) Gamma(b) / Gamma(a+b) for a, b > 0.
double beta_fn(double a, double b);
double log_beta_fn(double a, double b);

/// Binomial coefficient C(n, k) for integer 0 <= k <= n.
double binomial(int n, int k);
double log_binomial(int n, int k);
/// Generalized binomial C(x, r) = (x-r+1)_r / r! with integer r >= 0.
double binomial_real(double x, int r);

/// n! as a double (overflows to inf past 170).
double factorial(int n);

/// Hahn polynomial Q_m(x; a, b, N) as the terminating 3F2 sum
///   sum_j (-m)_j (m+a+b+1)_j (-x)_j / (j! (a+1)_j (-N)_j).
/// Throws std::domain_error if m > N or m < 0.
double hahn_q(int m, double x, double a, double b, int N);

/// Shifted Jacobi polynomial R_m^(alpha,beta)(x), orthogonal on [0,1]
/// w.r.t. (1-x)^alpha x^beta and normalised by R_m(1) = (alpha+1)_m / m!.
double shifted_jacobi(int m, double x, const JacobiParams& params);

/// Squared norm <R_m, R_m> under the Jacobi inner product.
double shifted_jacobi_norm2(int m, const JacobiParams& params);

/// (2m/sigma + 1) (sigma)_m, continued to sigma = 0.
double sigma_weight(int m, double sigma);

}  // namespace dualbern
