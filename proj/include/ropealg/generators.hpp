#ifndef ROPEALG_GENERATORS_HPP
#define ROPEALG_GENERATORS_HPP

#include <optional>
#include <vector>

#include "ropealg/linalg.hpp"

namespace ropealg {

// Per-block rotation frequencies. `geometric` reproduces the usual schedule
// theta_k = base^(-2(k-1)/(2K)); a single block gives theta = 1.
struct FrequencySchedule {
  double base = 10000.0;
  std::vector<double> values;

  static FrequencySchedule geometric(int count, double base = 10000.0);
  static FrequencySchedule from_values(std::vector<double> values, double base = 10000.0);

  int count() const { return static_cast<int>(values.size()); }
  double max_frequency() const;
};

struct PositionVector {
  std::vector<double> coords;

  int size() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[i]; }
};

PositionVector operator-(const PositionVector& a, const PositionVector& b);

// One term of an axis's block plan: this axis contributes `coeff * x` to the
// rotation angle of 2x2 block `block`.
struct BlockTerm {
  int block = 0;
  double coeff = 0.0;
};

using BlockPlan = std::vector<std::vector<BlockTerm>>;  // indexed by axis

// A set of N skew generators over so(d) together with the frequency schedule
// that produced it, an optional orthogonal basis change q (identity when
// absent), and the block plan that drives the fast rotation path. Sets built
// by the constructors below satisfy the full constraint system (skewness,
// pairwise commutation, linear independence); sets assembled by hand or
// loaded from JSON may not, which is exactly what the validators measure.
// Degenerate constructions (mixed_2d) are flagged, not rejected.
struct GeneratorSet {
  int d = 0;
  int n_axes = 0;
  int blocks_per_axis = 0;
  FrequencySchedule schedule;
  std::vector<Matrix> basis;         // N generators, d x d
  std::optional<Matrix> q;           // basis change; nullopt means identity
  std::optional<BlockPlan> plan;     // absent for foreign/unstructured sets
  bool degenerate = false;

  bool has_plan() const { return plan.has_value(); }
  Matrix basis_change() const { return q ? *q : Matrix::identity(d); }
};

// Standard basis of the maximal commuting block-diagonal subalgebra: axis i
// owns contiguous blocks [i*K, (i+1)*K) carrying theta_1..theta_K.
GeneratorSet toral_basis(int n_axes, int blocks_per_axis, const FrequencySchedule& schedule);

// toral_basis(2, K, schedule).
GeneratorSet standard_2d(const FrequencySchedule& schedule);

// Both axis generators equal theta1*J (+) theta2*J, so every position enters
// through the combined coordinate x1 + x2. Deliberately dependent; flagged.
GeneratorSet mixed_2d(double theta1, double theta2);

// Zero-pad every generator (and q) into so(d_target), top-left embedding.
GeneratorSet embed_in_larger(const GeneratorSet& gen, int d_target);

// Replace each B_i by q B_i q^T and compose q into the stored basis change.
GeneratorSet conjugate(const GeneratorSet& gen, const Matrix& q,
                       double orth_tol = default_tolerances().orthogonality);

// exp(sum_i x_i B_i); the oracle path.
RotationMatrix rope_matrix_dense(const GeneratorSet& gen, const PositionVector& x);

// q * directsum_j rot2(sum_i x_i * coeff_{i,j}) * q^T via the block plan;
// O(d) when q is identity, O(d^2) otherwise (two dense q multiplications).
RotationMatrix rope_matrix_fast(const GeneratorSet& gen, const PositionVector& x);

// 2*pi over the largest schedule frequency; positions are distinguishable
// only within one such period per axis.
double fundamental_period(const GeneratorSet& gen);

// (d/2) x N matrix of per-block angle coefficients: angles = F * dx.
// Requires a block plan.
Matrix frequency_matrix(const GeneratorSet& gen);

// Recover the per-axis block plan from (basis, q): conjugate each generator
// to block-diagonal form and read off the 2x2 block coefficients. Returns
// nullopt when the off-block mass exceeds `tol` (no usable plan).
std::optional<BlockPlan> derive_block_plan(const std::vector<Matrix>& basis, const Matrix* q,
                                           int d, double tol = default_tolerances().block_structure);

}  // namespace ropealg

#endif  // ROPEALG_GENERATORS_HPP
