#ifndef ROPEALG_VALIDATE_HPP
#define ROPEALG_VALIDATE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ropealg/generators.hpp"

namespace ropealg {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  bool verdict = false;
  std::uint64_t seed = kDefaultSeed;
  std::vector<CheckResult> checks;
};

struct ValidateOptions {
  int relativity_samples = 200;
  double relativity_range = 50.0;
  double relativity_tol = default_tolerances().relativity;
  int grid_per_axis = 8;
  double reversibility_tol = default_tolerances().reversibility_min_distance;
  std::uint64_t seed = kDefaultSeed;
};

// max_i max-abs(B_i + B_i^T); threshold 1e-12.
CheckResult check_skewness(const GeneratorSet& gen);

// max over pairs i < k of max-abs([B_i, B_k]); threshold 1e-12.
CheckResult check_commutativity(const GeneratorSet& gen);

// Numerical rank of the N vectorized generators; passes iff rank == N.
CheckResult check_independence(const GeneratorSet& gen);

// Samples position pairs in [-range, range]^N and measures
// ||R(x1)^T R(x2) - R(x2 - x1)||_F on the dense path.
CheckResult check_relativity(const GeneratorSet& gen, int n_samples = 200, double range = 50.0,
                             double tol = default_tolerances().relativity,
                             std::uint64_t seed = kDefaultSeed);

// Minimum pairwise rotation distance over a grid of grid_per_axis points per
// axis inside one fundamental period [-P/2, P/2); passes iff it exceeds tol.
// Also reports the algebraic sufficient condition (independence rank).
CheckResult check_reversibility(const GeneratorSet& gen, int grid_per_axis = 8,
                                double tol = default_tolerances().reversibility_min_distance);

// Rank bound floor(d/2) >= N plus a centralizer-dimension probe: the null
// space of X -> ([X, B_1], ..., [X, B_N]) over the skew matrices.
CheckResult check_masa(const GeneratorSet& gen);

// Dimension of the centralizer of the generator set inside so(d).
int centralizer_dimension(const GeneratorSet& gen);

// Brute-force helper behind check_reversibility, exposed so callers can probe
// explicit point sets (e.g. exact period boundaries).
double min_pairwise_rotation_distance(const GeneratorSet& gen,
                                      std::span<const PositionVector> points);

// Runs every check; verdict is the conjunction. Checks are ordered by name.
ValidationReport validate_all(const GeneratorSet& gen, const ValidateOptions& options = {});

}  // namespace ropealg

#endif  // ROPEALG_VALIDATE_HPP
