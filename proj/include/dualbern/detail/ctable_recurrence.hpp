#pragma once

#include <algorithm>
#include <cassert>

namespace dualbern::detail {

// Fills rows k..row_end of the C-table for (n, k, l, alpha, beta) given the
// anchor C_{k,n-l}. Grid is any type with Scalar& operator()(row, col),
// zero-based in both indices (row r holds logical index k + r). Shared
// between the floating point builder and the exact-rational replay in the
// oracle.
template <class Scalar, class Grid>
void fill_ctable(int n, int k, int l, const Scalar& alpha, const Scalar& beta,
                 const Scalar& anchor, Grid& grid, int row_end) {
  const int last = n - l;
  auto at = [&](int i, int j) -> Scalar& { return grid(i - k, j - k); };

  auto a_star = [&](int u) -> Scalar {
    assert(u + 1 != 0);
    return Scalar(u - n) * Scalar(u - k + 1) * (Scalar(u + k + 1) + beta) / Scalar(u + 1);
  };
  auto b_star = [&](int u) -> Scalar {
    assert(u - n - 1 != 0);
    return Scalar(u) * (Scalar(u - n - l - 1) - alpha) * Scalar(u - n + l - 1) /
           Scalar(u - n - 1);
  };

  at(k, last) = anchor;
  for (int j = last - 1; j >= k; --j) {
    const Scalar num = Scalar(j - n) * Scalar(j - k + 1) * (Scalar(j + k + 2) + beta);
    const Scalar den = Scalar(j + 1) * Scalar(j - n + l) * (Scalar(j - l - n) - alpha);
    at(k, j) = num / den * at(k, j + 1);
  }

  row_end = std::min(row_end, last);
  for (int i = k; i < row_end; ++i) {
    const Scalar inv_a = Scalar(1) / a_star(i);
    const Scalar b_i = b_star(i);
    for (int j = k; j <= last; ++j) {
      Scalar acc = Scalar(i - j) * (Scalar(2 * i + 2 * j - 2 * n) - alpha + beta) * at(i, j);
      if (j > k) acc += b_star(j) * at(i, j - 1);
      if (j < last) acc += a_star(j) * at(i, j + 1);
      if (i > k) acc -= b_i * at(i - 1, j);
      at(i + 1, j) = acc * inv_a;
    }
  }
}

}  // namespace dualbern::detail
