#pragma once

namespace dualbern::detail {

// Terminating 3F2(-m, m+a+b+1, -x; a+1, -N; 1) summed in Scalar.
template <class Scalar>
Scalar hahn_sum(int m, Scalar x, Scalar a, Scalar b, int N) {
  const Scalar s = Scalar(m) + a + b + Scalar(1);
  Scalar term = 1;
  Scalar sum = 1;
  for (int j = 0; j < m; ++j) {
    term *= Scalar(j - m) * (s + Scalar(j)) * (Scalar(j) - x) /
            (Scalar(j + 1) * (a + Scalar(1 + j)) * Scalar(j - N));
    if (term == Scalar(0)) break;
    sum += term;
  }
  return sum;
}

// Shifted Jacobi R_m(x) = (a+1)_m/m! 2F1(-m, m+a+b+1; a+1; 1-x) summed in Scalar.
template <class Scalar>
Scalar jacobi_sum(int m, Scalar x, Scalar a, Scalar b) {
  const Scalar s = Scalar(m) + a + b + Scalar(1);
  const Scalar y = Scalar(1) - x;
  Scalar term = 1;
  Scalar sum = 1;
  Scalar lead = 1;
  for (int j = 0; j < m; ++j) {
    term *= Scalar(j - m) * (s + Scalar(j)) * y / (Scalar(j + 1) * (a + Scalar(1 + j)));
    sum += term;
    lead *= (a + Scalar(1 + j)) / Scalar(j + 1);
  }
  return lead * sum;
}

}  // namespace dualbern::detail
