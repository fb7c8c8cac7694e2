#include "ropealg/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace ropealg {

namespace {

void require_position(const GeneratorSet& gen, const PositionVector& x, const char* op) {
  if (x.size() != gen.n_axes) {
    throw DimensionError(std::string(op) + ": position has " + std::to_string(x.size()) +
                         " coordinates, set has " + std::to_string(gen.n_axes) + " axes");
  }
  for (double c : x.coords) {
    if (!std::isfinite(c)) throw DomainError(std::string(op) + ": non-finite coordinate");
  }
}

}  // namespace

FrequencySchedule FrequencySchedule::geometric(int count, double base) {
  if (count <= 0) throw DomainError("FrequencySchedule: count must be positive");
  if (base <= 1.0) throw DomainError("FrequencySchedule: base must exceed 1");
  FrequencySchedule s;
  s.base = base;
  s.values.resize(count);
  for (int k = 0; k < count; ++k) {
    s.values[k] = std::pow(base, -2.0 * k / (2.0 * count));
  }
  return s;
}

FrequencySchedule FrequencySchedule::from_values(std::vector<double> values, double base) {
  if (values.empty()) throw DomainError("FrequencySchedule: empty value list");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("FrequencySchedule: frequencies must be positive and finite");
    }
  }
  FrequencySchedule s;
  s.base = base;
  s.values = std::move(values);
  return s;
}

double FrequencySchedule::max_frequency() const {
  return *std::max_element(values.begin(), values.end());
}

PositionVector operator-(const PositionVector& a, const PositionVector& b) {
  if (a.size() != b.size()) throw DimensionError("PositionVector: length mismatch");
  PositionVector out;
  out.coords.resize(a.coords.size());
  for (std::size_t i = 0; i < a.coords.size(); ++i) out.coords[i] = a.coords[i] - b.coords[i];
  return out;
}

GeneratorSet toral_basis(int n_axes, int blocks_per_axis, const FrequencySchedule& schedule) {
  if (n_axes <= 0) throw DomainError("toral_basis: n_axes must be positive");
  if (blocks_per_axis <= 0) throw DomainError("toral_basis: blocks_per_axis must be positive");
  if (schedule.count() != blocks_per_axis) {
    throw DomainError("toral_basis: schedule has " + std::to_string(schedule.count()) +
                      " entries, expected " + std::to_string(blocks_per_axis));
  }
  GeneratorSet gen;
  gen.d = 2 * n_axes * blocks_per_axis;
  gen.n_axes = n_axes;
  gen.blocks_per_axis = blocks_per_axis;
  gen.schedule = schedule;
  gen.basis.reserve(n_axes);
  BlockPlan plan(n_axes);
  for (int axis = 0; axis < n_axes; ++axis) {
    Matrix b(gen.d, gen.d);
    for (int k = 0; k < blocks_per_axis; ++k) {
      const int block = axis * blocks_per_axis + k;
      const double theta = schedule.values[k];
      b(2 * block, 2 * block + 1) = -theta;
      b(2 * block + 1, 2 * block) = theta;
      plan[axis].push_back({block, theta});
    }
    gen.basis.push_back(std::move(b));
  }
  gen.plan = std::move(plan);
  return gen;
}

GeneratorSet standard_2d(const FrequencySchedule& schedule) {
  return toral_basis(2, schedule.count(), schedule);
}

GeneratorSet mixed_2d(double theta1, double theta2) {
  if (!(theta1 > 0.0) || !(theta2 > 0.0)) {
    throw DomainError("mixed_2d: frequencies must be positive");
  }
  GeneratorSet gen;
  gen.d = 4;
  gen.n_axes = 2;
  gen.blocks_per_axis = 1;
  gen.schedule = FrequencySchedule::from_values({theta1, theta2});
  gen.degenerate = true;
  Matrix b(4, 4);
  b(0, 1) = -theta1;
  b(1, 0) = theta1;
  b(2, 3) = -theta2;
  b(3, 2) = theta2;
  gen.basis = {b, b};  // identical generators: only x1 + x2 survives
  BlockPlan plan(2);
  for (int axis = 0; axis < 2; ++axis) {
    plan[axis] = {{0, theta1}, {1, theta2}};
  }
  gen.plan = std::move(plan);
  return gen;
}

GeneratorSet embed_in_larger(const GeneratorSet& gen, int d_target) {
  if (d_target <= gen.d) {
    throw DomainError("embed_in_larger: d_target must exceed the current dimension");
  }
  if (d_target % 2 != 0) throw DomainError("embed_in_larger: d_target must be even");
  GeneratorSet out = gen;
  out.d = d_target;
  for (Matrix& b : out.basis) {
    Matrix padded(d_target, d_target);
    for (int i = 0; i < gen.d; ++i) {
      for (int j = 0; j < gen.d; ++j) padded(i, j) = b(i, j);
    }
    b = std::move(padded);
  }
  if (gen.q) {
    Matrix padded = Matrix::identity(d_target);
    for (int i = 0; i < gen.d; ++i) {
      for (int j = 0; j < gen.d; ++j) padded(i, j) = (*gen.q)(i, j);
    }
    out.q = std::move(padded);
  }
  // Padded blocks stay at angle zero; the plan is unchanged.
  return out;
}

GeneratorSet conjugate(const GeneratorSet& gen, const Matrix& q, double orth_tol) {
  if (q.rows() != gen.d || q.cols() != gen.d) {
    throw DimensionError("conjugate: q must be " + std::to_string(gen.d) + "x" +
                         std::to_string(gen.d));
  }
  const double orth = frobenius_norm(transpose(q) * q - Matrix::identity(gen.d));
  if (orth > orth_tol) {
    throw ValidationError("conjugate: q orthogonality residual " + std::to_string(orth) +
                              " exceeds tolerance",
                          orth);
  }
  GeneratorSet out = gen;
  const Matrix qt = transpose(q);
  for (Matrix& b : out.basis) b = q * b * qt;
  out.q = gen.q ? q * (*gen.q) : q;
  return out;
}

RotationMatrix rope_matrix_dense(const GeneratorSet& gen, const PositionVector& x) {
  require_position(gen, x, "rope_matrix_dense");
  if (static_cast<int>(gen.basis.size()) != gen.n_axes) {
    throw DimensionError("rope_matrix_dense: set has " + std::to_string(gen.basis.size()) +
                         " generators for " + std::to_string(gen.n_axes) + " axes");
  }
  Matrix sum(gen.d, gen.d);
  for (int i = 0; i < gen.n_axes; ++i) {
    if (x[i] == 0.0) continue;
    sum = sum + x[i] * gen.basis[i];
  }
  return RotationMatrix::trusted(mat_exp_dense(sum));
}

RotationMatrix rope_matrix_fast(const GeneratorSet& gen, const PositionVector& x) {
  require_position(gen, x, "rope_matrix_fast");
  if (!gen.plan) {
    throw StateError("rope_matrix_fast: generator set carries no block plan");
  }
  if (static_cast<int>(gen.plan->size()) < gen.n_axes) {
    throw DimensionError("rope_matrix_fast: block plan covers fewer axes than the set declares");
  }
  const int n_blocks = gen.d / 2;
  std::vector<double> angles(n_blocks, 0.0);
  for (int axis = 0; axis < gen.n_axes; ++axis) {
    for (const BlockTerm& term : (*gen.plan)[axis]) {
      angles[term.block] += x[axis] * term.coeff;
    }
  }
  Matrix r = Matrix::identity(gen.d);
  for (int b = 0; b < n_blocks; ++b) {
    const double c = std::cos(angles[b]);
    const double s = std::sin(angles[b]);
    r(2 * b, 2 * b) = c;
    r(2 * b, 2 * b + 1) = -s;
    r(2 * b + 1, 2 * b) = s;
    r(2 * b + 1, 2 * b + 1) = c;
  }
  if (gen.q) {
    r = (*gen.q) * r * transpose(*gen.q);
  }
  return RotationMatrix::trusted(std::move(r));
}

double fundamental_period(const GeneratorSet& gen) {
  return 2.0 * std::numbers::pi / gen.schedule.max_frequency();
}

Matrix frequency_matrix(const GeneratorSet& gen) {
  if (!gen.plan) throw StateError("frequency_matrix: generator set carries no block plan");
  Matrix f(gen.d / 2, gen.n_axes);
  for (int axis = 0; axis < gen.n_axes; ++axis) {
    for (const BlockTerm& term : (*gen.plan)[axis]) {
      f(term.block, axis) += term.coeff;
    }
  }
  return f;
}

std::optional<BlockPlan> derive_block_plan(const std::vector<Matrix>& basis, const Matrix* q,
                                           int d, double tol) {
  if (d % 2 != 0) return std::nullopt;
  const int n_blocks = d / 2;
  BlockPlan plan(basis.size());
  for (std::size_t axis = 0; axis < basis.size(); ++axis) {
    const Matrix& b = basis[axis];
    if (b.rows() != d || b.cols() != d) return std::nullopt;
    Matrix diag = q ? transpose(*q) * b * (*q) : b;
    double off_block = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (i / 2 == j / 2) continue;
        off_block = std::max(off_block, std::abs(diag(i, j)));
      }
    }
    if (off_block > tol) return std::nullopt;
    for (int blk = 0; blk < n_blocks; ++blk) {
      const double coeff = diag(2 * blk + 1, 2 * blk);
      // The 2x2 block must be coeff * J (skew, zero diagonal).
      const double shape = std::max({std::abs(diag(2 * blk, 2 * blk)),
                                     std::abs(diag(2 * blk + 1, 2 * blk + 1)),
                                     std::abs(diag(2 * blk, 2 * blk + 1) + coeff)});
      if (shape > tol) return std::nullopt;
      if (coeff != 0.0) plan[axis].push_back({blk, coeff});
    }
  }
  return plan;
}

}  // namespace ropealg
