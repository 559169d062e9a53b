#include "dualbern/basis.hpp"

#include <cmath>
#include <stdexcept>

#include "dualbern/detail/hypergeometric.hpp"

namespace dualbern {

namespace {

void check_dual_index(int n, int i) {
  if (n < 0 || i < 0 || i > n) throw std::out_of_range("dual index outside [0, n]");
}

}  // namespace

BezierCurve::BezierCurve(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw std::invalid_argument("BezierCurve: need at least one control point of dimension >= 1");
  }
}

BezierCurve BezierCurve::scalar(const std::vector<double>& coeffs) {
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(coeffs.size()), 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) pts(static_cast<Eigen::Index>(i), 0) = coeffs[i];
  return BezierCurve(std::move(pts));
}

double bernstein(int n, int i, double x) {
  if (i < 0 || i > n) return 0.0;
  return binomial(n, i) * std::pow(x, i) * std::pow(1.0 - x, n - i);
}

Eigen::VectorXd bernstein_values(int n, double x) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  b[0] = 1.0;
  for (int r = 1; r <= n; ++r) {
    for (int i = r; i > 0; --i) b[i] = (1.0 - x) * b[i] + x * b[i - 1];
    b[0] *= 1.0 - x;
  }
  return b;
}

Eigen::VectorXd de_casteljau_eval(const BezierCurve& curve, double x) {
  Eigen::MatrixXd work = curve.points();
  for (int r = curve.degree(); r > 0; --r) {
    for (int i = 0; i < r; ++i) work.row(i) = (1.0 - x) * work.row(i) + x * work.row(i + 1);
  }
  return work.row(0).transpose();
}

double de_casteljau_eval(const std::vector<double>& coeffs, double x) {
  std::vector<double> work = coeffs;
  for (std::size_t r = work.size(); r-- > 1;) {
    for (std::size_t i = 0; i < r; ++i) work[i] = (1.0 - x) * work[i] + x * work[i + 1];
  }
  return work.empty() ? 0.0 : work[0];
}

BezierCurve degree_elevate(const BezierCurve& curve, int r) {
  if (r < 0) throw std::invalid_argument("degree_elevate: negative elevation");
  Eigen::MatrixXd p = curve.points();
  for (int step = 0; step < r; ++step) {
    const int n = static_cast<int>(p.rows()) - 1;
    Eigen::MatrixXd q(n + 2, p.cols());
    q.row(0) = p.row(0);
    q.row(n + 1) = p.row(n);
    for (int i = 1; i <= n; ++i) {
      const double t = static_cast<double>(i) / (n + 1);
      q.row(i) = t * p.row(i - 1) + (1.0 - t) * p.row(i);
    }
    p = std::move(q);
  }
  return BezierCurve(std::move(p));
}

std::pair<BezierCurve, BezierCurve> subdivide(const BezierCurve& curve, double t) {
  const int n = curve.degree();
  Eigen::MatrixXd work = curve.points();
  Eigen::MatrixXd left(n + 1, curve.dimension()), right(n + 1, curve.dimension());
  for (int r = 0; r <= n; ++r) {
    left.row(r) = work.row(0);
    right.row(n - r) = work.row(n - r);
    for (int i = 0; i < n - r; ++i) work.row(i) = (1.0 - t) * work.row(i) + t * work.row(i + 1);
  }
  return {BezierCurve(std::move(left)), BezierCurve(std::move(right))};
}

BezierCurve jacobi_to_bernstein(const JacobiExpansion& exp, int n) {
  if (exp.degree() < 0 || exp.degree() > n) {
    throw std::invalid_argument("jacobi_to_bernstein: expansion degree exceeds target degree");
  }
  const double a = exp.params.alpha(), b = exp.params.beta();
  std::vector<double> out(n + 1, 0.0);
  double lead = 1.0;  // (alpha+1)_i / i!
  for (int i = 0; i <= exp.degree(); ++i) {
    if (i > 0) lead *= (a + i) / i;
    const double c = exp.coeffs[i] * lead;
    if (c == 0.0) continue;
    for (int j = 0; j <= n; ++j) out[j] += c * hahn_q(i, n - j, a, b, n);
  }
  return BezierCurve::scalar(out);
}

JacobiExpansion bernstein_to_jacobi(const BezierCurve& curve, const JacobiParams& params) {
  if (curve.dimension() != 1) {
    throw std::invalid_argument("bernstein_to_jacobi: curve must be scalar");
  }
  const int n = curve.degree();
  const double a = params.alpha(), b = params.beta(), s = params.sigma();

  // Column factor (2j+sigma)(-n)_j / ((alpha+1)_j (j+sigma)_{n+1}); the j = 0
  // value is 1/(sigma+1)_n, which stays finite at sigma = 0.
  const bool plain = n <= kPlainArithmeticLimit;
  std::vector<SignedLog> col(n + 1);
  std::vector<double> col_plain(n + 1);
  for (int j = 0; j <= n; ++j) {
    if (plain) {
      col_plain[j] = j == 0 ? 1.0 / pochhammer(s + 1.0, n)
                            : (2.0 * j + s) * pochhammer(-n, j) /
                                  (pochhammer(a + 1.0, j) * pochhammer(j + s, n + 1));
    } else if (j == 0) {
      col[j] = SignedLog{} / pochhammer_log(s + 1.0, n);
    } else {
      col[j] = SignedLog::from(2.0 * j + s) * pochhammer_log(-n, j) /
               (pochhammer_log(a + 1.0, j) * pochhammer_log(j + s, n + 1));
    }
  }

  JacobiExpansion out{params, std::vector<double>(n + 1, 0.0)};
  for (int i = 0; i <= n; ++i) {
    const double p = curve.points()(i, 0);
    if (p == 0.0) continue;
    // Row factor C(n,i) (alpha+1)_{n-i} (beta+1)_i.
    if (plain) {
      const double row = binomial(n, i) * pochhammer(a + 1.0, n - i) * pochhammer(b + 1.0, i);
      for (int j = 0; j <= n; ++j) {
        out.coeffs[j] += p * row * col_plain[j] * hahn_q(j, i, b, a, n);
      }
      continue;
    }
    SignedLog row = pochhammer_log(a + 1.0, n - i) * pochhammer_log(b + 1.0, i);
    row.log_abs += log_binomial(n, i);
    for (int j = 0; j <= n; ++j) {
      out.coeffs[j] += p * (row * col[j]).value() * hahn_q(j, i, b, a, n);
    }
  }
  return out;
}

double evaluate(const JacobiExpansion& exp, double x) {
  long double sum = 0.0L;
  for (int j = 0; j <= exp.degree(); ++j) {
    sum += exp.coeffs[j] * detail::jacobi_sum<long double>(j, x, exp.params.alpha(), exp.params.beta());
  }
  return static_cast<double>(sum);
}

JacobiExpansion dual_jacobi_coeffs(int n, int i, const JacobiParams& params) {
  check_dual_index(n, i);
  const double a = params.alpha(), b = params.beta(), s = params.sigma();
  const double inv_beta = 1.0 / beta_fn(a + 1.0, b + 1.0);
  JacobiExpansion out{params, std::vector<double>(n + 1)};
  double inv_poch = 1.0;  // 1/(alpha+1)_j
  for (int j = 0; j <= n; ++j) {
    if (j > 0) inv_poch /= a + j;
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    out.coeffs[j] = sign * sigma_weight(j, s) * inv_poch * hahn_q(j, i, b, a, n) * inv_beta;
  }
  return out;
}

double dual_short_eval(int n, int i, const JacobiParams& params, double x) {
  check_dual_index(n, i);
  const double a = params.alpha(), b = params.beta(), s = params.sigma();
  long double sum = 0.0L;
  long double t = 1.0L;  // (-i)_h / (-n)_h
  for (int h = 0; h <= i; ++h) {
    if (h > 0) t *= (h - 1.0L - i) / (h - 1.0L - n);
    sum += t * detail::jacobi_sum<long double>(n - h, x, a, b + h + 1.0);
  }
  const double sign = (n - i) % 2 == 0 ? 1.0 : -1.0;
  if (n <= kPlainArithmeticLimit) {
    return static_cast<double>(sign * pochhammer(s + 1.0, n) * sum /
                               (beta_fn(a + 1.0, b + 1.0) * pochhammer(a + 1.0, n - i) *
                                pochhammer(b + 1.0, i)));
  }
  SignedLog pref = pochhammer_log(s + 1.0, n) /
                   (pochhammer_log(a + 1.0, n - i) * pochhammer_log(b + 1.0, i));
  pref.log_abs -= log_beta_fn(a + 1.0, b + 1.0);
  pref.sign *= static_cast<int>(sign);
  return static_cast<double>(pref.value() * sum);
}

double constrained_dual_eval(const ConstraintSpec& spec, int i, const JacobiParams& params,
                             double x) {
  if (!spec.contains(i)) throw std::out_of_range("constrained_dual_eval: index outside [k, n-l]");
  const int k = spec.k(), l = spec.l();
  const JacobiParams shifted(params.alpha() + 2 * l, params.beta() + 2 * k);
  const double inner = dual_short_eval(spec.n() - k - l, i - k, shifted, x);
  return u_factor(spec, i) * std::pow(x, k) * std::pow(1.0 - x, l) * inner;
}

double bernstein_inner(int n, int i, int m, int j, const JacobiParams& params) {
  if (i < 0 || i > n || j < 0 || j > m) {
    throw std::out_of_range("bernstein_inner: index outside degree range");
  }
  const double a = params.alpha(), b = params.beta();
  if (n + m <= kPlainArithmeticLimit) {
    // B(a+1,b+1) C(n,i) C(m,j) (a+1)_{n+m-i-j} (b+1)_{i+j} / (a+b+2)_{n+m}, one rounding at the end
    long double v = static_cast<long double>(binomial(n, i)) * binomial(m, j);
    for (int t = 0; t < n + m - i - j; ++t) v *= a + 1.0L + t;
    for (int t = 0; t < i + j; ++t) v *= b + 1.0L + t;
    for (int t = 0; t < n + m; ++t) v /= a + b + 2.0L + t;
    return static_cast<double>(v * std::tgamma(a + 1.0L) * std::tgamma(b + 1.0L) / std::tgamma(a + b + 2.0L));
  }
  SignedLog v = pochhammer_log(a + 1.0, n + m - i - j) * pochhammer_log(b + 1.0, i + j) /
                pochhammer_log(a + b + 2.0, n + m);
  v.log_abs += log_beta_fn(a + 1.0, b + 1.0) + log_binomial(n, i) + log_binomial(m, j);
  return v.value();
}

Eigen::MatrixXd bernstein_gram(int n, int m, const JacobiParams& params) {
  Eigen::MatrixXd g(n + 1, m + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) g(i, j) = bernstein_inner(n, i, m, j, params);
  }
  return g;
}

}  // namespace dualbern
