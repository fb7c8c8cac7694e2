#ifndef ROPEALG_TESTS_SUPPORT_HPP
#define ROPEALG_TESTS_SUPPORT_HPP

// Test-only oracles and generators. Everything here is deliberately
// independent of the library's fast paths: the exponential oracle is a plain
// compensated Taylor sum (no scaling-and-squaring), and the closed-form RoPE
// evaluators write the cos/sin entries directly.

#include <cmath>
#include <random>
#include <vector>

#include "ropealg/generators.hpp"
#include "ropealg/linalg.hpp"

namespace ropealg::testing {

// exp(A) as a straight 60-term Taylor sum with Kahan compensation per entry.
inline Matrix taylor_exp_reference(const Matrix& a, int terms = 60) {
  const int n = a.rows();
  Matrix sum = Matrix::identity(n);
  Matrix comp(n, n);  // running compensation
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= terms; ++k) {
    term = (1.0 / k) * (term * a);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double y = term(i, j) - comp(i, j);
        const double t = sum(i, j) + y;
        comp(i, j) = (t - sum(i, j)) - y;
        sum(i, j) = t;
      }
    }
  }
  return sum;
}

// The 2x2 rotary encoding written out entrywise.
inline Matrix rope_1d_closed_form(double m, double theta) {
  const double c = std::cos(m * theta);
  const double s = std::sin(m * theta);
  return Matrix::from_rows({{c, -s}, {s, c}});
}

// The 4x4 two-axis encoding: independent rotations on orthogonal planes.
inline Matrix rope_2d_closed_form(double x1, double x2, double theta) {
  const double c1 = std::cos(x1 * theta), s1 = std::sin(x1 * theta);
  const double c2 = std::cos(x2 * theta), s2 = std::sin(x2 * theta);
  return Matrix::from_rows({{c1, -s1, 0.0, 0.0},
                            {s1, c1, 0.0, 0.0},
                            {0.0, 0.0, c2, -s2},
                            {0.0, 0.0, s2, c2}});
}

inline Matrix random_matrix(int rows, int cols, std::mt19937_64& rng, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (double& v : m.data()) v = dist(rng);
  return m;
}

inline Matrix random_skew(int d, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double v = dist(rng);
      m(i, j) = v;
      m(j, i) = -v;
    }
  }
  return m;
}

inline PositionVector random_position(int n_axes, std::mt19937_64& rng, double range) {
  std::uniform_real_distribution<double> dist(-range, range);
  PositionVector x;
  x.coords.resize(n_axes);
  for (double& c : x.coords) c = dist(rng);
  return x;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

}  // namespace ropealg::testing

#endif  // ROPEALG_TESTS_SUPPORT_HPP
