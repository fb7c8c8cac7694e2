#ifndef ROPEALG_TOLERANCES_HPP
#define ROPEALG_TOLERANCES_HPP

#include <cstdint>

namespace ropealg {

// Every numerical threshold used by the library, in one place so that tests
// and reports are reproducible. Callers may pass adjusted copies to the
// validators; the defaults below are what the test suite pins.
struct Tolerances {
  double skew_symmetry = 1e-12;           // max-abs of A + A^T
  double orthogonality = 1e-10;           // ||Q^T Q - I||_F
  double determinant = 1e-8;              // |det(Q) - 1|
  double commutativity = 1e-12;           // max-abs of [B_i, B_k]
  double relativity = 1e-9;               // ||R(x1)^T R(x2) - R(x2-x1)||_F
  double reversibility_min_distance = 1e-6;  // min pairwise ||R(x)-R(y)||_F
  double fast_dense_agreement = 1e-10;    // fast path vs matrix exponential
  double displacement_roundtrip = 1e-8;   // sup-norm of recovered offsets
  double lsq_consistency = 1e-6;          // displacement fit residual cap
  double rank_relative_cutoff = 1e-12;    // sigma_max * max(m,n) * cutoff
  double block_structure = 1e-9;          // off-block mass when reading plans
  double condition_warning = 1e12;        // (I + A) solve conditioning
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tols{};
  return tols;
}

// Seed used by the validators when the caller does not supply one; always
// recorded in the emitted report.
inline constexpr std::uint64_t kDefaultSeed = 42;

}  // namespace ropealg

#endif  // ROPEALG_TOLERANCES_HPP
