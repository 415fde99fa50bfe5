#pragma once

// Shared test utilities: seeded random signals and brute-force oracles that
// build operators from dense matrices.

#include <random>
#include <vector>

#include "qgabor/phase_space.hpp"

namespace qgabor::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 r(20240611);
  return r;
}

inline CVector random_vector(int n) {
  std::normal_distribution<double> nd;
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(nd(rng()), nd(rng()));
  return v;
}

inline CVector random_unit(int n) {
  CVector v = random_vector(n);
  return v / v.norm();
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline std::vector<int> divisors(int L) {
  std::vector<int> d;
  for (int k = 1; k <= L; ++k) {
    if (L % k == 0) d.push_back(k);
  }
  return d;
}

// pi(x, w) f(t) = e^{2 pi i t w / L} f(t - x), written out entry by entry.
inline CMatrix shift_matrix_oracle(int L, int x, int w) {
  CMatrix M = CMatrix::Zero(L, L);
  for (int t = 0; t < L; ++t) {
    const int s = ((t - x) % L + L) % L;
    M(t, s) = std::polar(1.0, 2.0 * std::numbers::pi * t * w / L);
  }
  return M;
}

}  // namespace qgabor::test
