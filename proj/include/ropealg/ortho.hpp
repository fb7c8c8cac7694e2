#ifndef ROPEALG_ORTHO_HPP
#define ROPEALG_ORTHO_HPP

#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ropealg/linalg.hpp"

namespace ropealg {

enum class OrthoKind { cayley, exp, givens };

const char* ortho_kind_name(OrthoKind kind);
OrthoKind ortho_kind_from_name(const std::string& name);

// Parameter vector that deterministically produces an orthogonal matrix.
// cayley/exp: params are the strict upper triangle of a skew matrix A,
// row-major, length d(d-1)/2. givens: one angle (radians) per plan entry.
struct OrthoParam {
  OrthoKind kind = OrthoKind::cayley;
  int dim = 0;
  std::vector<double> params;
  std::vector<std::pair<int, int>> plan;  // givens only; pairs (i, j), i < j
};

// All pairs (i, j), i < j, in row-major order; length d(d-1)/2. Composing a
// Givens rotation per pair reaches a dense subset of SO(d).
std::vector<std::pair<int, int>> default_givens_plan(int d);

struct OrthoBuildInfo {
  double condition_estimate = 0.0;  // 1-norm condition of (I + A), cayley only
  bool ill_conditioned = false;
};

// cayley: (I - A)(I + A)^{-1} by linear solve; exp: mat_exp_dense(A);
// givens: G_r ... G_2 G_1 with G_1 the first plan entry.
RotationMatrix build_orthogonal(const OrthoParam& p, OrthoBuildInfo* info = nullptr);

// Analytic dQ/d params[index].
Matrix directional_derivative(const OrthoParam& p, int index);

// Central difference (Q(p + eps e_i) - Q(p - eps e_i)) / (2 eps); the
// independent oracle for the analytic path.
Matrix fd_directional_derivative(const OrthoParam& p, int index, double eps = 1e-6);

// Assemble skew A from a strict-upper-triangle parameter vector.
Matrix skew_from_params(int dim, std::span<const double> params);

// Uniform draw in [-0.5, 0.5] per parameter, with the default plan for
// givens; small enough to keep (I + A) well-conditioned.
OrthoParam random_ortho_param(OrthoKind kind, int dim, std::mt19937_64& rng);

}  // namespace ropealg

#endif  // ROPEALG_ORTHO_HPP
