#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ropealg/ortho.hpp"
#include "ropealg/serialize.hpp"
#include "ropealg/validate.hpp"
#include "support.hpp"

using namespace ropealg;
using namespace ropealg::testing;

namespace {

GeneratorSet unit_2d() { return standard_2d(FrequencySchedule::from_values({1.0})); }

const CheckResult& find_check(const ValidationReport& report, const std::string& name) {
  for (const CheckResult& c : report.checks) {
    if (c.name == name) return c;
  }
  REQUIRE(false);
  static CheckResult dummy;
  return dummy;
}

// Two admissible generators whose supports share the middle plane: the
// classic non-commuting pair, padded into so(4).
GeneratorSet overlapping_pair() {
  GeneratorSet gen;
  gen.d = 4;
  gen.n_axes = 2;
  gen.blocks_per_axis = 1;
  gen.schedule = FrequencySchedule::from_values({1.0});
  Matrix b1(4, 4), b2(4, 4);
  b1(0, 1) = 1.0;
  b1(1, 0) = -1.0;
  b2(1, 2) = 1.0;
  b2(2, 1) = -1.0;
  gen.basis = {b1, b2};
  return gen;
}
}  // namespace

TEST_SUITE("validate") {

TEST_CASE("commutativity check") {
  CHECK(check_commutativity(unit_2d()).residual == 0.0);
  CHECK(check_commutativity(unit_2d()).passed);

  std::mt19937_64 rng(4001);
  const Matrix q = build_orthogonal(random_ortho_param(OrthoKind::givens, 4, rng)).matrix();
  const CheckResult conj = check_commutativity(conjugate(unit_2d(), q));
  CHECK(conj.passed);
  CHECK(conj.residual < 1e-13);

  const CheckResult bad = check_commutativity(overlapping_pair());
  CHECK_FALSE(bad.passed);
  CHECK(bad.residual >= 1.0);
  CHECK(bad.detail.find("B_1") != std::string::npos);
}

TEST_CASE("independence check") {
  CHECK(check_independence(unit_2d()).passed);
  CHECK(check_independence(unit_2d()).detail == "rank 2 of 2 generators");

  const CheckResult mixed = check_independence(mixed_2d(1.0, 2.0));
  CHECK_FALSE(mixed.passed);
  CHECK(mixed.residual == 1.0);  // rank 1 of 2

  // Scalar multiples are dependent no matter the scale.
  GeneratorSet scaled = unit_2d();
  scaled.basis[1] = 2.0 * scaled.basis[0];
  const CheckResult dep = check_independence(scaled);
  CHECK_FALSE(dep.passed);
  CHECK(dep.detail.find("rank 1") != std::string::npos);
}

TEST_CASE("relativity check") {
  CHECK(check_relativity(unit_2d(), 200, 50.0).passed);

  // Zeroing the lower triangle of a generator breaks skewness and with it
  // the relative-position identity.
  GeneratorSet corrupted = unit_2d();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) corrupted.basis[0](i, j) = 0.0;
  }
  const CheckResult bad = check_relativity(corrupted, 50, 5.0);
  CHECK_FALSE(bad.passed);
  CHECK(bad.residual > 1e-2);

  // The mixed construction still satisfies relativity; only reversibility
  // is lost.
  CHECK(check_relativity(mixed_2d(1.0, 2.0), 100, 20.0).passed);

  CHECK_THROWS_AS(check_relativity(unit_2d(), 0, 1.0), DomainError);
}

TEST_CASE("relativity residual grows with the corruption scale") {
  std::mt19937_64 rng(4002);
  const Matrix noise = random_matrix(4, 4, rng);
  const Matrix symmetric = 0.5 * (noise + transpose(noise));
  double previous = 0.0;
  for (double eps : {1e-6, 1e-4, 1e-2}) {
    GeneratorSet gen = unit_2d();
    gen.basis[0] = gen.basis[0] + eps * symmetric;
    const double residual = check_relativity(gen, 50, 10.0).residual;
    CHECK(residual > previous);
    previous = residual;
  }
}

TEST_CASE("reversibility check") {
  const CheckResult good = check_reversibility(unit_2d(), 8);
  CHECK(good.passed);
  CHECK(good.detail.find("sufficient condition holds") != std::string::npos);

  const CheckResult mixed = check_reversibility(mixed_2d(1.0, 2.0), 8);
  CHECK_FALSE(mixed.passed);
  CHECK(mixed.detail.find("sufficient condition fails") != std::string::npos);

  CHECK_THROWS_AS(check_reversibility(unit_2d(), 101), ResourceError);
  CHECK_THROWS_AS(check_reversibility(unit_2d(), 1), DomainError);
}

TEST_CASE("mixed frequencies collide at combined-coordinate duplicates") {
  const GeneratorSet gen = mixed_2d(1.0, 2.0);
  const std::vector<PositionVector> points{{{1.0, 0.0}}, {{0.0, 1.0}}};
  CHECK(min_pairwise_rotation_distance(gen, points) < 1e-14);
}

TEST_CASE("rotation by a full period collides with the origin") {
  // Period-boundary behavior: R(P) == R(0) exactly, so sampling must stay
  // inside one open period.
  const GeneratorSet gen = toral_basis(1, 1, FrequencySchedule::from_values({1.0}));
  const double period = fundamental_period(gen);
  const std::vector<PositionVector> points{{{0.0}}, {{period}}};
  CHECK(min_pairwise_rotation_distance(gen, points) < 1e-12);
}

TEST_CASE("masa probe on the canonical constructions") {
  const CheckResult plain = check_masa(unit_2d());
  CHECK(plain.passed);
  CHECK(plain.detail.find("nu = 2") != std::string::npos);
  CHECK(plain.detail.find("full MASA basis") != std::string::npos);
  CHECK(centralizer_dimension(unit_2d()) == 2);

  const GeneratorSet embedded = embed_in_larger(unit_2d(), 6);
  const CheckResult emb = check_masa(embedded);
  CHECK(emb.passed);
  CHECK(centralizer_dimension(embedded) == 3);
  CHECK(emb.detail.find("nu = 3") != std::string::npos);
  CHECK(emb.detail.find("2 of 3") != std::string::npos);

  // Three axes cannot fit in so(4).
  GeneratorSet overfull = unit_2d();
  overfull.n_axes = 3;
  overfull.basis.push_back(overfull.basis[0] + overfull.basis[1]);
  const CheckResult bad = check_masa(overfull);
  CHECK_FALSE(bad.passed);
  CHECK(bad.detail.find("floor(d/2) = 2 < N = 3") != std::string::npos);
}

TEST_CASE("centralizer dimension is invariant under conjugation") {
  std::mt19937_64 rng(4003);
  const GeneratorSet base = toral_basis(2, 2, FrequencySchedule::geometric(2));
  CHECK(centralizer_dimension(base) == 4);
  for (OrthoKind kind : {OrthoKind::cayley, OrthoKind::exp, OrthoKind::givens}) {
    const Matrix q = build_orthogonal(random_ortho_param(kind, base.d, rng)).matrix();
    CHECK(centralizer_dimension(conjugate(base, q)) == 4);
  }
}

TEST_CASE("validate_all passes on sound constructions") {
  for (int n : {1, 2, 3}) {
    for (int k : {1, 2}) {
      const ValidationReport report = validate_all(toral_basis(n, k, FrequencySchedule::geometric(k)));
      CHECK(report.verdict);
    }
  }
  CHECK(validate_all(embed_in_larger(unit_2d(), 6)).verdict);
}

TEST_CASE("validate_all on conjugated sets matches the base verdict") {
  std::mt19937_64 rng(4004);
  const GeneratorSet sound = standard_2d(FrequencySchedule::geometric(2));
  const GeneratorSet broken = mixed_2d(1.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const OrthoKind kind = static_cast<OrthoKind>(trial % 3);
    const Matrix q = build_orthogonal(random_ortho_param(kind, sound.d, rng)).matrix();
    CHECK(validate_all(conjugate(sound, q)).verdict);
    // ... and conjugation cannot repair a degenerate set either.
    if (trial < 5) {
      const Matrix q4 = build_orthogonal(random_ortho_param(kind, broken.d, rng)).matrix();
      CHECK_FALSE(validate_all(conjugate(broken, q4)).verdict);
    }
  }
}

TEST_CASE("embedded sets keep validating") {
  std::mt19937_64 rng(4006);
  std::uniform_int_distribution<int> n_dist(1, 2);
  std::uniform_int_distribution<int> k_dist(1, 2);
  std::uniform_int_distribution<int> pad_dist(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = n_dist(rng), k = k_dist(rng);
    const GeneratorSet base = toral_basis(n, k, FrequencySchedule::geometric(k));
    const int d_target = base.d + 2 * pad_dist(rng);
    CHECK(validate_all(embed_in_larger(base, d_target)).verdict);
  }
}

TEST_CASE("validate_all names exactly the failing constraints for mixed") {
  const ValidationReport report = validate_all(mixed_2d(1.0, 2.0));
  CHECK_FALSE(report.verdict);
  std::vector<std::string> failing;
  for (const CheckResult& c : report.checks) {
    if (!c.passed) failing.push_back(c.name);
  }
  CHECK(failing == std::vector<std::string>{"independence", "reversibility"});
}

TEST_CASE("validate_all fails commutativity for random skew pairs") {
  std::mt19937_64 rng(4005);
  GeneratorSet gen;
  gen.d = 4;
  gen.n_axes = 2;
  gen.blocks_per_axis = 1;
  gen.schedule = FrequencySchedule::from_values({1.0});
  gen.basis = {random_skew(4, rng), random_skew(4, rng)};
  const ValidationReport report = validate_all(gen);
  CHECK_FALSE(report.verdict);
  CHECK_FALSE(find_check(report, "commutativity").passed);
}

TEST_CASE("reports are ordered, consistent and reproducible") {
  const ValidationReport report = validate_all(unit_2d());
  CHECK(std::is_sorted(report.checks.begin(), report.checks.end(),
                       [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; }));
  bool all = true;
  for (const CheckResult& c : report.checks) {
    CHECK(c.passed == (c.residual <= c.threshold));
    all = all && c.passed;
  }
  CHECK(report.verdict == all);
  CHECK(report.seed == kDefaultSeed);

  // Same options, same bytes.
  const std::string a = dump_stable(to_json(validate_all(unit_2d())));
  const std::string b = dump_stable(to_json(validate_all(unit_2d())));
  CHECK(a == b);
}

TEST_CASE("validate_all caps oversized reversibility grids") {
  // 8 points/axis on 5 axes would be 32768 > 10^4; validate_all shrinks the
  // grid instead of failing.
  const ValidationReport report =
      validate_all(toral_basis(5, 1, FrequencySchedule::from_values({1.0})));
  CHECK(report.verdict);
}

}  // TEST_SUITE
