#include "ropealg/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <utility>

namespace ropealg {

namespace {

// Centralizer probes above this dimension would need an O(d^6) dense SVD;
// the rank bound alone is reported there.
constexpr int kMaxProbeDim = 32;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string format_position(const PositionVector& x) {
  std::string out = "(";
  for (int i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += format_double(x[i]);
  }
  return out + ")";
}

// Skew basis E_ab - E_ba for a < b, row-major pair order.
std::vector<std::pair<int, int>> skew_pairs(int d) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(d * (d - 1) / 2);
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) pairs.emplace_back(a, b);
  }
  return pairs;
}

bool grid_positions(const GeneratorSet& gen, int grid_per_axis, std::vector<PositionVector>& out) {
  const double period = fundamental_period(gen);
  const double step = period / grid_per_axis;
  const double start = -period / 2.0;
  std::vector<int> odometer(gen.n_axes, 0);
  while (true) {
    PositionVector x;
    x.coords.resize(gen.n_axes);
    for (int i = 0; i < gen.n_axes; ++i) x.coords[i] = start + odometer[i] * step;
    out.push_back(std::move(x));
    int axis = 0;
    while (axis < gen.n_axes && ++odometer[axis] == grid_per_axis) {
      odometer[axis] = 0;
      ++axis;
    }
    if (axis == gen.n_axes) break;
  }
  return true;
}

}  // namespace

CheckResult check_skewness(const GeneratorSet& gen) {
  CheckResult r;
  r.name = "skewness";
  r.threshold = default_tolerances().skew_symmetry;
  int worst = -1;
  for (std::size_t i = 0; i < gen.basis.size(); ++i) {
    const double res = max_abs(gen.basis[i] + transpose(gen.basis[i]));
    if (res > r.residual) {
      r.residual = res;
      worst = static_cast<int>(i);
    }
  }
  r.passed = r.residual <= r.threshold;
  r.detail = r.passed ? "all generators skew-symmetric"
                      : "generator B_" + std::to_string(worst + 1) + " violates A^T = -A";
  return r;
}

CheckResult check_commutativity(const GeneratorSet& gen) {
  CheckResult r;
  r.name = "commutativity";
  r.threshold = default_tolerances().commutativity;
  std::pair<int, int> worst{-1, -1};
  for (std::size_t i = 0; i < gen.basis.size(); ++i) {
    for (std::size_t k = i + 1; k < gen.basis.size(); ++k) {
      const double res = max_abs(commutator(gen.basis[i], gen.basis[k]));
      if (res > r.residual) {
        r.residual = res;
        worst = {static_cast<int>(i), static_cast<int>(k)};
      }
    }
  }
  r.passed = r.residual <= r.threshold;
  r.detail = r.passed ? "all generator pairs commute"
                      : "[B_" + std::to_string(worst.first + 1) + ", B_" +
                            std::to_string(worst.second + 1) + "] != 0";
  return r;
}

CheckResult check_independence(const GeneratorSet& gen) {
  CheckResult r;
  r.name = "independence";
  r.threshold = 0.0;
  const int n = static_cast<int>(gen.basis.size());
  Matrix stack(n, gen.d * gen.d);
  for (int i = 0; i < n; ++i) {
    const auto data = gen.basis[i].data();
    for (std::size_t j = 0; j < data.size(); ++j) stack(i, static_cast<int>(j)) = data[j];
  }
  const int rank = numerical_rank(stack);
  r.residual = static_cast<double>(n - rank);
  r.passed = rank == n;
  r.detail = "rank " + std::to_string(rank) + " of " + std::to_string(n) + " generators";
  return r;
}

CheckResult check_relativity(const GeneratorSet& gen, int n_samples, double range, double tol,
                             std::uint64_t seed) {
  if (n_samples < 1) throw DomainError("check_relativity: n_samples must be >= 1");
  CheckResult r;
  r.name = "relativity";
  r.threshold = tol;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-range, range);
  PositionVector worst_x1, worst_x2;
  for (int s = 0; s < n_samples; ++s) {
    PositionVector x1, x2;
    x1.coords.resize(gen.n_axes);
    x2.coords.resize(gen.n_axes);
    for (int i = 0; i < gen.n_axes; ++i) {
      x1.coords[i] = dist(rng);
      x2.coords[i] = dist(rng);
    }
    const Matrix r1 = rope_matrix_dense(gen, x1).matrix();
    const Matrix r2 = rope_matrix_dense(gen, x2).matrix();
    const Matrix rel = rope_matrix_dense(gen, x2 - x1).matrix();
    const double res = frobenius_norm(transpose(r1) * r2 - rel);
    if (res > r.residual) {
      r.residual = res;
      worst_x1 = x1;
      worst_x2 = x2;
    }
  }
  r.passed = r.residual <= r.threshold;
  r.detail = std::to_string(n_samples) + " pairs in [-" + format_double(range) + ", " +
             format_double(range) + "]; worst at x1=" + format_position(worst_x1) +
             ", x2=" + format_position(worst_x2);
  return r;
}

double min_pairwise_rotation_distance(const GeneratorSet& gen,
                                      std::span<const PositionVector> points) {
  if (points.size() < 2) throw DomainError("min_pairwise_rotation_distance: need >= 2 points");
  std::vector<Matrix> rotations;
  rotations.reserve(points.size());
  for (const PositionVector& x : points) rotations.push_back(rope_matrix_dense(gen, x).matrix());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rotations.size(); ++i) {
    for (std::size_t j = i + 1; j < rotations.size(); ++j) {
      best = std::min(best, frobenius_norm(rotations[i] - rotations[j]));
    }
  }
  return best;
}

CheckResult check_reversibility(const GeneratorSet& gen, int grid_per_axis, double tol) {
  if (grid_per_axis < 2) throw DomainError("check_reversibility: grid_per_axis must be >= 2");
  double total = std::pow(static_cast<double>(grid_per_axis), gen.n_axes);
  if (total > 1e4) {
    throw ResourceError("check_reversibility: grid of " + format_double(total) +
                        " points exceeds the 10^4 cap");
  }
  CheckResult r;
  r.name = "reversibility";

  std::vector<PositionVector> points;
  points.reserve(static_cast<std::size_t>(total));
  grid_positions(gen, grid_per_axis, points);

  std::vector<Matrix> rotations;
  rotations.reserve(points.size());
  for (const PositionVector& x : points) rotations.push_back(rope_matrix_dense(gen, x).matrix());

  double best = std::numeric_limits<double>::infinity();
  std::pair<std::size_t, std::size_t> argmin{0, 0};
  for (std::size_t i = 0; i < rotations.size(); ++i) {
    for (std::size_t j = i + 1; j < rotations.size(); ++j) {
      const double dist = frobenius_norm(rotations[i] - rotations[j]);
      if (dist < best) {
        best = dist;
        argmin = {i, j};
      }
    }
  }
  // This check certifies a lower bound on the distance, so the stored
  // residual is the margin tol - best: negative when distances are healthy.
  r.residual = tol - best;
  r.threshold = 0.0;
  r.passed = r.residual <= r.threshold;

  const int n = static_cast<int>(gen.basis.size());
  Matrix stack(n, gen.d * gen.d);
  for (int i = 0; i < n; ++i) {
    const auto data = gen.basis[i].data();
    for (std::size_t j = 0; j < data.size(); ++j) stack(i, static_cast<int>(j)) = data[j];
  }
  const int rank = numerical_rank(stack);
  r.detail = std::to_string(grid_per_axis) + " points/axis in one period; min distance " +
             format_double(best) + " (require > " + format_double(tol) + ") between " +
             format_position(points[argmin.first]) + " and " +
             format_position(points[argmin.second]) + "; independence rank " +
             std::to_string(rank) + "/" + std::to_string(n) +
             (rank == n ? " (sufficient condition holds)" : " (sufficient condition fails)");
  return r;
}

int centralizer_dimension(const GeneratorSet& gen) {
  const int d = gen.d;
  if (d > kMaxProbeDim) {
    throw ResourceError("centralizer_dimension: probe capped at d <= " +
                        std::to_string(kMaxProbeDim));
  }
  const auto pairs = skew_pairs(d);
  const int s = static_cast<int>(pairs.size());
  const int n = static_cast<int>(gen.basis.size());
  // Operator matrix of X -> ([X, B_1], ..., [X, B_N]) in skew coordinates.
  Matrix op(n * s, s);
  for (int col = 0; col < s; ++col) {
    const auto [a, b] = pairs[col];
    for (int k = 0; k < n; ++k) {
      const Matrix& g = gen.basis[k];
      // C = [E_ab - E_ba, B_k]; C_ij = d_ia B_bj - d_ib B_aj - B_ia d_jb + B_ib d_ja
      for (int row = 0; row < s; ++row) {
        const auto [i, j] = pairs[row];
        double c = 0.0;
        if (i == a) c += g(b, j);
        if (i == b) c -= g(a, j);
        if (j == b) c -= g(i, a);
        if (j == a) c += g(i, b);
        op(k * s + row, col) = c;
      }
    }
  }
  const int rank = numerical_rank(op);
  return s - rank;
}

CheckResult check_masa(const GeneratorSet& gen) {
  CheckResult r;
  r.name = "masa";
  r.threshold = 0.0;
  const int n = static_cast<int>(gen.basis.size());
  const int rank_bound = gen.d / 2;
  r.residual = static_cast<double>(std::max(0, n - rank_bound));
  r.passed = n <= rank_bound;
  if (!r.passed) {
    r.detail = "rank bound violated: floor(d/2) = " + std::to_string(rank_bound) + " < N = " +
               std::to_string(n);
    return r;
  }
  if (gen.d > kMaxProbeDim) {
    r.detail = "rank bound holds (N = " + std::to_string(n) + " <= floor(d/2) = " +
               std::to_string(rank_bound) + "); centralizer probe skipped for d > " +
               std::to_string(kMaxProbeDim);
    return r;
  }
  const int nu = centralizer_dimension(gen);
  r.detail = "centralizer dimension nu = " + std::to_string(nu) + "; floor(d/2) = " +
             std::to_string(rank_bound) +
             (nu == rank_bound ? " (maximal toral centralizer)" : "") +
             (nu == n ? "; set is a full MASA basis" : "; set spans " + std::to_string(n) +
                                                           " of " + std::to_string(nu) +
                                                           " commuting directions");
  return r;
}

ValidationReport validate_all(const GeneratorSet& gen, const ValidateOptions& options) {
  ValidationReport report;
  report.seed = options.seed;

  // Shrink the grid instead of tripping the reversibility resource cap; the
  // distance scan is quadratic in the point count.
  int grid = options.grid_per_axis;
  while (grid > 2 && std::pow(static_cast<double>(grid), gen.n_axes) > 4096.0) --grid;

  report.checks.push_back(check_commutativity(gen));
  report.checks.push_back(check_independence(gen));
  report.checks.push_back(check_masa(gen));
  report.checks.push_back(check_relativity(gen, options.relativity_samples,
                                           options.relativity_range, options.relativity_tol,
                                           options.seed));
  report.checks.push_back(check_reversibility(gen, grid, options.reversibility_tol));
  report.checks.push_back(check_skewness(gen));

  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  report.verdict = std::all_of(report.checks.begin(), report.checks.end(),
                               [](const CheckResult& c) { return c.passed; });
  return report;
}

}  // namespace ropealg
