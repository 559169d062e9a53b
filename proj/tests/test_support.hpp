#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dualbern/basis.hpp"
#include "dualbern/specfun.hpp"

namespace dualbern::testing {

inline bool close_rel(double actual, double expected, double rel, double abs_floor = 0.0) {
  return std::fabs(actual - expected) <= std::max(rel * std::fabs(expected), abs_floor);
}

inline double rel_dev(double actual, double expected) {
  const double scale = std::fabs(expected);
  return scale == 0.0 ? std::fabs(actual) : std::fabs(actual - expected) / scale;
}

/// Monomial coefficients (ascending) of prod (x - r).
inline std::vector<double> monomial_from_roots(const std::vector<double>& roots, double lead = 1.0) {
  std::vector<double> c{lead};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

/// Bernstein coefficients of sum a_j x^j in degree a.size()-1.
inline BezierCurve bernstein_from_monomial(const std::vector<double>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<double> b(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= i; ++j) b[i] += binomial(i, j) / binomial(n, j) * a[j];
  }
  return BezierCurve::scalar(b);
}

inline std::vector<double> uniform_samples(int count, unsigned seed, double lo = 0.0, double hi = 1.0) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> xs(count);
  for (double& x : xs) x = dist(gen);
  return xs;
}

inline const std::vector<double>& param_grid() {
  static const std::vector<double> grid{-0.5, 0.0, 1.0, 2.5};
  return grid;
}

}  // namespace dualbern::testing
