#include "ropealg/apply.hpp"

#include <cmath>
#include <string>

namespace ropealg {

namespace {

void require_batch(const GeneratorSet& gen, const TokenBatch& batch, const char* op) {
  if (batch.positions.size() != batch.vectors.size()) {
    throw DimensionError(std::string(op) + ": positions/vectors count mismatch");
  }
  for (const auto& v : batch.vectors) {
    if (static_cast<int>(v.size()) != gen.d) {
      throw DimensionError(std::string(op) + ": vector dimension " + std::to_string(v.size()) +
                           " does not match d = " + std::to_string(gen.d));
    }
  }
  for (const auto& x : batch.positions) {
    if (x.size() != gen.n_axes) {
      throw DimensionError(std::string(op) + ": position arity mismatch");
    }
  }
}

std::vector<double> apply_rotation(const Matrix& r, const std::vector<double>& v) {
  std::vector<double> out(v.size(), 0.0);
  for (int i = 0; i < r.rows(); ++i) {
    double sum = 0.0;
    for (int j = 0; j < r.cols(); ++j) sum += r(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace

TokenBatch rotate_batch(const GeneratorSet& gen, const TokenBatch& batch) {
  require_batch(gen, batch, "rotate_batch");
  TokenBatch out;
  out.positions = batch.positions;
  out.vectors.reserve(batch.vectors.size());
  for (int t = 0; t < batch.count(); ++t) {
    const Matrix r = rope_matrix_fast(gen, batch.positions[t]).matrix();
    out.vectors.push_back(apply_rotation(r, batch.vectors[t]));
  }
  return out;
}

ScoreMatrix attention_scores(const TokenBatch& q_batch, const TokenBatch& k_batch) {
  if (q_batch.count() == 0 || k_batch.count() == 0) {
    throw DomainError("attention_scores: empty batch");
  }
  const std::size_t dim = q_batch.vectors.front().size();
  for (const auto& v : q_batch.vectors) {
    if (v.size() != dim) throw DimensionError("attention_scores: ragged query batch");
  }
  for (const auto& v : k_batch.vectors) {
    if (v.size() != dim) throw DimensionError("attention_scores: vector dimension mismatch");
  }
  ScoreMatrix scores(q_batch.count(), k_batch.count());
  for (int s = 0; s < q_batch.count(); ++s) {
    for (int t = 0; t < k_batch.count(); ++t) {
      scores(s, t) = dot(q_batch.vectors[s], k_batch.vectors[t]);
    }
  }
  return scores;
}

ScoreMatrix relative_scores_oracle(const GeneratorSet& gen, const TokenBatch& raw_q,
                                   const TokenBatch& raw_k) {
  require_batch(gen, raw_q, "relative_scores_oracle");
  require_batch(gen, raw_k, "relative_scores_oracle");
  ScoreMatrix scores(raw_q.count(), raw_k.count());
  for (int s = 0; s < raw_q.count(); ++s) {
    for (int t = 0; t < raw_k.count(); ++t) {
      const Matrix rel =
          rope_matrix_dense(gen, raw_k.positions[t] - raw_q.positions[s]).matrix();
      scores(s, t) = dot(raw_q.vectors[s], apply_rotation(rel, raw_k.vectors[t]));
    }
  }
  return scores;
}

PositionVector recover_displacement(const GeneratorSet& gen, const RotationMatrix& r_rel,
                                    double consistency_tol) {
  if (r_rel.dim() != gen.d) {
    throw DimensionError("recover_displacement: rotation dimension mismatch");
  }
  const Matrix freq = frequency_matrix(gen);  // (d/2) x N
  const int n_blocks = gen.d / 2;

  Matrix diag = r_rel.matrix();
  if (gen.q) diag = transpose(*gen.q) * diag * (*gen.q);

  // Per-block angles plus the mass the block model fails to explain; the
  // latter catches rotations that alias a consistent angle pattern without
  // actually living in this set's block structure.
  std::vector<double> angles(n_blocks, 0.0);
  Matrix model(gen.d, gen.d);
  for (int b = 0; b < n_blocks; ++b) {
    angles[b] = std::atan2(diag(2 * b + 1, 2 * b), diag(2 * b, 2 * b));
    const Matrix r2 = rot2_block(angles[b]);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) model(2 * b + i, 2 * b + j) = r2(i, j);
    }
  }
  const double structure_residual = max_abs(diag - model);

  const LeastSquaresResult fit = solve_least_squares(freq, angles);
  if (fit.rank < gen.n_axes) {
    throw InconsistencyError(
        "recover_displacement: frequency matrix is rank-deficient (rank " +
            std::to_string(fit.rank) + " < " + std::to_string(gen.n_axes) +
            " axes); displacement is not unique",
        static_cast<double>(gen.n_axes - fit.rank));
  }
  const double residual = std::max(fit.residual_norm, structure_residual);
  if (residual > consistency_tol) {
    throw InconsistencyError(
        "recover_displacement: fit residual " + std::to_string(residual) +
            " exceeds tolerance; rotation was not generated by this set inside one period",
        residual);
  }
  PositionVector out;
  out.coords = fit.solution;
  return out;
}

}  // namespace ropealg
