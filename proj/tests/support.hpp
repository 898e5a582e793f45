#pragma once

#include "ere/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace ere::test {

// exp(J S) for symmetric S is symplectic; a random one of moderate norm.
inline Mat4 random_symplectic(std::mt19937& rng, double scale = 0.5) {
  std::normal_distribution<double> g(0.0, scale);
  Mat4 s;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) s(i, j) = s(j, i) = g(rng);
  const Mat4 a = j4() * s;
  Mat4 term = Mat4::Identity(), sum = Mat4::Identity();
  for (int k = 1; k < 40; ++k) {
    term = term * a / k;
    sum += term;
  }
  return sum;
}

// Symplectic 4x4 from 2x2 symplectic blocks acting on (p1, x1) and (p2, x2).
inline Mat4 diamond(const Mat2& a, const Mat2& b) {
  // coordinates (p1, p2, x1, x2): block a on indices {0, 2}, b on {1, 3}
  Mat4 m = Mat4::Zero();
  const int ia[2] = {0, 2}, ib[2] = {1, 3};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      m(ia[r], ia[c]) = a(r, c);
      m(ib[r], ib[c]) = b(r, c);
    }
  return m;
}

inline Mat2 rot_block(double th) {
  Mat2 r;
  r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  return r;
}

inline Mat2 d_block(double l) {
  Mat2 d;
  d << l, 0.0, 0.0, 1.0 / l;
  return d;
}

inline Mat2 n1_block(double s, double b) {
  Mat2 n;
  n << s, b, 0.0, s;
  return n;
}

// Greedy matching distance between two multisets of four complex numbers.
inline double multiset_distance(std::array<cplx, 4> a, std::array<cplx, 4> b, bool relative = false) {
  double worst = 0.0;
  std::vector<bool> used(4, false);
  for (const cplx& x : a) {
    int best = -1;
    double bd = 1e300;
    for (int j = 0; j < 4; ++j)
      if (!used[j] && std::abs(x - b[j]) < bd) bd = std::abs(x - b[j]), best = j;
    used[best] = true;
    worst = std::max(worst, relative ? bd / std::max(1.0, std::abs(x)) : bd);
  }
  return worst;
}

}  // namespace ere::test
