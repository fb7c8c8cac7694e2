#ifndef ROPEALG_APPLY_HPP
#define ROPEALG_APPLY_HPP

#include <vector>

#include "ropealg/generators.hpp"

namespace ropealg {

// Query/key vectors with their positions. Vectors are d-dimensional for the
// generator set they are rotated with.
struct TokenBatch {
  std::vector<PositionVector> positions;
  std::vector<std::vector<double>> vectors;

  int count() const { return static_cast<int>(vectors.size()); }
};

// Attention logits (no softmax); entry (s, t) pairs token s of the query
// batch with token t of the key batch.
using ScoreMatrix = Matrix;

// Rotate every vector by the fast-path rotation at its position. Positions
// are unchanged; Euclidean norms are preserved.
TokenBatch rotate_batch(const GeneratorSet& gen, const TokenBatch& batch);

// Plain dot products of the stored vectors.
ScoreMatrix attention_scores(const TokenBatch& q_batch, const TokenBatch& k_batch);

// q_s^T R(x_t - x_s) k_t on UNROTATED batches via the dense exponential: the
// independent oracle for the relative-score identity.
ScoreMatrix relative_scores_oracle(const GeneratorSet& gen, const TokenBatch& raw_q,
                                   const TokenBatch& raw_k);

// Invert a relative rotation back to its displacement: conjugate to block
// form, read per-block angles with atan2 (range (-pi, pi]), and solve
// angles = frequency_matrix * dx by least squares. Displacements are only
// recoverable inside one fundamental period. Throws InconsistencyError when
// the frequency matrix is rank-deficient, when the input is not block-
// diagonalizable by the set's basis change, or when the fit residual
// exceeds `consistency_tol`.
PositionVector recover_displacement(const GeneratorSet& gen, const RotationMatrix& r_rel,
                                    double consistency_tol = default_tolerances().lsq_consistency);

}  // namespace ropealg

#endif  // ROPEALG_APPLY_HPP
