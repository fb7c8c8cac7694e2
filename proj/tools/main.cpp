// ropealg CLI: generate rotary-embedding generator sets, validate them,
// benchmark the fast rotation path against the dense exponential, and run an
// end-to-end attention demo. All I/O is JSON.
//
// Exit codes: 0 all checks pass, 1 validation/assertion failure,
//             2 usage or parse error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ropealg/apply.hpp"
#include "ropealg/generators.hpp"
#include "ropealg/ortho.hpp"
#include "ropealg/serialize.hpp"
#include "ropealg/validate.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ROPE_ALGEBRA_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ropealg::DomainError("ROPE_ALGEBRA_SEED is not an unsigned integer: " +
                                 std::string(env));
    }
  }
  return ropealg::kDefaultSeed;
}

void emit(const json& j, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << ropealg::dump_stable(j);
  } else {
    ropealg::write_json_file(output_path, j);
  }
}

struct GenFlags {
  int axes = 2;
  int blocks = 1;
  double base = 10000.0;
  std::vector<double> thetas;
  int d_target = 0;  // 0 = natural 2*axes*blocks
  bool mixed = false;
  std::string conjugate_kind;
  std::string ortho_file;
  std::optional<std::uint64_t> seed;
  std::string output;
};

ropealg::GeneratorSet build_from_flags(const GenFlags& flags) {
  using namespace ropealg;
  if (flags.mixed) {
    if (!flags.thetas.empty() && flags.thetas.size() != 2) {
      throw DomainError("--mixed takes exactly two --theta frequencies");
    }
    const double t1 = flags.thetas.empty() ? 1.0 : flags.thetas[0];
    const double t2 = flags.thetas.empty() ? 1.0 : flags.thetas[1];
    return mixed_2d(t1, t2);
  }

  FrequencySchedule schedule = flags.thetas.empty()
                                   ? FrequencySchedule::geometric(flags.blocks, flags.base)
                                   : FrequencySchedule::from_values(flags.thetas, flags.base);
  if (schedule.count() != flags.blocks) {
    throw DomainError("--theta provides " + std::to_string(schedule.count()) +
                      " frequencies but --blocks asks for " + std::to_string(flags.blocks));
  }

  const int natural_d = 2 * flags.axes * flags.blocks;
  if (flags.d_target != 0) {
    if (flags.d_target % 2 != 0) throw DomainError("--d must be even");
    if (flags.d_target / 2 < flags.axes) {
      throw DomainError("--d " + std::to_string(flags.d_target) + " cannot host " +
                        std::to_string(flags.axes) +
                        " axes: a valid set needs floor(d/2) >= N, i.e. d >= " +
                        std::to_string(2 * flags.axes));
    }
    if (flags.d_target < natural_d) {
      throw DomainError("--d " + std::to_string(flags.d_target) + " is below the " +
                        std::to_string(natural_d) + " required by " + std::to_string(flags.axes) +
                        " axes x " + std::to_string(flags.blocks) + " blocks");
    }
  }

  GeneratorSet gen = toral_basis(flags.axes, flags.blocks, schedule);
  if (flags.d_target > natural_d) gen = embed_in_larger(gen, flags.d_target);

  const bool wants_conjugation = !flags.conjugate_kind.empty() || !flags.ortho_file.empty();
  if (wants_conjugation) {
    OrthoParam param;
    if (!flags.ortho_file.empty()) {
      param = load_ortho_param(flags.ortho_file);
      if (param.dim != gen.d) {
        throw DomainError("ortho parameter dimension " + std::to_string(param.dim) +
                          " does not match the generated set (d = " + std::to_string(gen.d) + ")");
      }
      if (!flags.conjugate_kind.empty() &&
          param.kind != ortho_kind_from_name(flags.conjugate_kind)) {
        throw DomainError("--conjugate " + flags.conjugate_kind +
                          " disagrees with the kind stored in " + flags.ortho_file);
      }
    } else {
      std::mt19937_64 rng(resolve_seed(flags.seed));
      param = random_ortho_param(ortho_kind_from_name(flags.conjugate_kind), gen.d, rng);
    }
    gen = conjugate(gen, build_orthogonal(param).matrix());
  }
  return gen;
}

int cmd_gen(const GenFlags& flags) {
  emit(ropealg::to_json(build_from_flags(flags)), flags.output);
  return kExitOk;
}

int cmd_verify(const std::string& input, int samples, double tol_relativity, int grid,
               const std::optional<std::uint64_t>& seed, const std::string& output) {
  using namespace ropealg;
  const GeneratorSet gen = load_generator_set(input);
  ValidateOptions options;
  options.relativity_samples = samples;
  options.relativity_tol = tol_relativity;
  options.grid_per_axis = grid;
  options.seed = resolve_seed(seed);
  const ValidationReport report = validate_all(gen, options);
  emit(to_json(report), output);
  if (!report.verdict) {
    for (const CheckResult& c : report.checks) {
      if (!c.passed) std::cerr << "FAILED " << c.name << ": " << c.detail << "\n";
    }
  }
  return report.verdict ? kExitOk : kExitFailure;
}

double quantile(std::vector<double>& values, double q) {
  const std::size_t idx =
      std::min(values.size() - 1, static_cast<std::size_t>(q * (values.size() - 1) + 0.5));
  std::nth_element(values.begin(), values.begin() + idx, values.end());
  return values[idx];
}

int cmd_bench(const std::string& input, int samples, const std::optional<std::uint64_t>& seed,
              const std::string& output) {
  using namespace ropealg;
  using clock = std::chrono::steady_clock;
  const GeneratorSet gen = load_generator_set(input);
  if (!gen.has_plan()) {
    throw StateError("bench: the loaded set has no block plan, so there is no fast path to time");
  }
  const std::uint64_t used_seed = resolve_seed(seed);
  std::mt19937_64 rng(used_seed);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);

  std::vector<double> fast_us, dense_us;
  fast_us.reserve(samples);
  dense_us.reserve(samples);
  double max_disagreement = 0.0;
  for (int trial = 0; trial < samples; ++trial) {
    PositionVector x;
    x.coords.resize(gen.n_axes);
    for (double& c : x.coords) c = dist(rng);

    const auto t0 = clock::now();
    const RotationMatrix fast = rope_matrix_fast(gen, x);
    const auto t1 = clock::now();
    const RotationMatrix dense = rope_matrix_dense(gen, x);
    const auto t2 = clock::now();

    fast_us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
    dense_us.push_back(std::chrono::duration<double, std::micro>(t2 - t1).count());
    max_disagreement =
        std::max(max_disagreement, frobenius_norm(fast.matrix() - dense.matrix()));
  }

  const double fast_median = quantile(fast_us, 0.5);
  const double dense_median = quantile(dense_us, 0.5);
  const double ratio = fast_median > 0.0 ? dense_median / fast_median : 0.0;
  const bool pass = max_disagreement < default_tolerances().fast_dense_agreement && ratio > 1.0;

  json j;
  j["d"] = gen.d;
  j["samples"] = samples;
  j["seed"] = used_seed;
  j["fast_median_us"] = fast_median;
  j["fast_p95_us"] = quantile(fast_us, 0.95);
  j["dense_median_us"] = dense_median;
  j["dense_p95_us"] = quantile(dense_us, 0.95);
  j["speedup_median"] = ratio;
  j["max_disagreement"] = max_disagreement;
  j["pass"] = pass;
  emit(j, output);
  if (!pass) {
    std::cerr << "bench failed: disagreement " << max_disagreement << ", speedup " << ratio
              << "\n";
  }
  return pass ? kExitOk : kExitFailure;
}

int cmd_demo(const std::string& input, int tokens, const std::optional<std::uint64_t>& seed,
             const std::string& output) {
  using namespace ropealg;
  const GeneratorSet gen = load_generator_set(input);
  const std::uint64_t used_seed = resolve_seed(seed);
  std::mt19937_64 rng(used_seed);

  // Keep pairwise displacements inside one fundamental period so the
  // round-trip leg is meaningful.
  const double quarter = fundamental_period(gen) / 4.0;
  std::uniform_real_distribution<double> pos_dist(-quarter, quarter);
  std::uniform_real_distribution<double> vec_dist(-1.0, 1.0);
  auto make_batch = [&](int count) {
    TokenBatch batch;
    for (int t = 0; t < count; ++t) {
      PositionVector x;
      x.coords.resize(gen.n_axes);
      for (double& c : x.coords) c = pos_dist(rng);
      batch.positions.push_back(std::move(x));
      std::vector<double> v(gen.d);
      for (double& e : v) e = vec_dist(rng);
      batch.vectors.push_back(std::move(v));
    }
    return batch;
  };

  const TokenBatch q = make_batch(tokens);
  const TokenBatch k = make_batch(tokens);

  const ScoreMatrix via_rotation = attention_scores(rotate_batch(gen, q), rotate_batch(gen, k));
  const ScoreMatrix oracle = relative_scores_oracle(gen, q, k);
  const double relativity_residual = max_abs(via_rotation - oracle);

  std::uniform_real_distribution<double> shift_dist(-50.0, 50.0);
  PositionVector shift;
  shift.coords.resize(gen.n_axes);
  for (double& c : shift.coords) c = shift_dist(rng);
  TokenBatch qs = q, ks = k;
  for (auto& x : qs.positions) {
    for (int i = 0; i < gen.n_axes; ++i) x.coords[i] += shift[i];
  }
  for (auto& x : ks.positions) {
    for (int i = 0; i < gen.n_axes; ++i) x.coords[i] += shift[i];
  }
  const ScoreMatrix shifted = attention_scores(rotate_batch(gen, qs), rotate_batch(gen, ks));
  const double shift_residual = max_abs(shifted - via_rotation);

  double roundtrip_error = 0.0;
  bool rank_deficient = false;
  std::string roundtrip_note = "ok";
  try {
    for (int trial = 0; trial < 10; ++trial) {
      PositionVector dx;
      dx.coords.resize(gen.n_axes);
      for (double& c : dx.coords) c = pos_dist(rng) * 1.9;  // inside the open period
      const PositionVector back = recover_displacement(gen, rope_matrix_dense(gen, dx));
      for (int i = 0; i < gen.n_axes; ++i) {
        roundtrip_error = std::max(roundtrip_error, std::abs(back[i] - dx[i]));
      }
    }
  } catch (const InconsistencyError& e) {
    rank_deficient = true;
    roundtrip_note = e.what();
  }

  const bool pass = relativity_residual < default_tolerances().relativity &&
                    shift_residual < default_tolerances().relativity && !rank_deficient &&
                    roundtrip_error < default_tolerances().displacement_roundtrip;

  json j;
  j["d"] = gen.d;
  j["tokens"] = tokens;
  j["seed"] = used_seed;
  j["relativity_residual"] = relativity_residual;
  j["shift_residual"] = shift_residual;
  j["roundtrip_error"] = roundtrip_error;
  j["roundtrip_rank_deficient"] = rank_deficient;
  j["roundtrip_note"] = roundtrip_note;
  j["pass"] = pass;
  emit(j, output);
  if (!pass) std::cerr << "demo failed: " << ropealg::dump_stable(j);
  return pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N-dimensional rotary position embeddings as commuting skew generator sets"};
  app.require_subcommand(1);

  GenFlags gen_flags;
  CLI::App* gen = app.add_subcommand("gen", "Construct a generator set and write it as JSON");
  auto* axes_opt = gen->add_option("--axes", gen_flags.axes, "Number of position axes N");
  auto* blocks_opt = gen->add_option("--blocks", gen_flags.blocks, "2x2 blocks per axis K");
  auto* base_opt = gen->add_option("--base", gen_flags.base, "Geometric frequency base");
  gen->add_option("--theta", gen_flags.thetas, "Explicit frequencies (overrides --base)");
  auto* d_opt = gen->add_option("--d", gen_flags.d_target, "Embed into so(d), d >= 2*N*K");
  auto* mixed_opt = gen->add_flag("--mixed", gen_flags.mixed,
                                  "Combined-coordinate 2-axis set (known degenerate)");
  auto* conj_opt = gen->add_option("--conjugate", gen_flags.conjugate_kind,
                                   "Apply a random basis change of this kind")
                       ->check(CLI::IsMember({"cayley", "exp", "givens"}));
  auto* ortho_opt =
      gen->add_option("--ortho-file", gen_flags.ortho_file, "Basis change from a parameter file");
  gen->add_option("--seed", gen_flags.seed, "Random seed (env ROPE_ALGEBRA_SEED as fallback)");
  gen->add_option("-o,--output", gen_flags.output, "Output path (default stdout)");
  mixed_opt->excludes(axes_opt, blocks_opt, base_opt, d_opt, conj_opt, ortho_opt);

  std::string verify_input, verify_output;
  int verify_samples = 200;
  double verify_tol = ropealg::default_tolerances().relativity;
  int verify_grid = 8;
  std::optional<std::uint64_t> verify_seed;
  CLI::App* verify = app.add_subcommand("verify", "Run the full constraint validator");
  verify->add_option("-i,--input", verify_input, "Generator-set JSON")->required();
  verify->add_option("--samples", verify_samples, "Relativity sample pairs")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tol-relativity", verify_tol, "Relativity tolerance");
  verify->add_option("--grid", verify_grid, "Reversibility grid points per axis")
      ->check(CLI::Range(2, 100));
  verify->add_option("--seed", verify_seed, "Sampling seed");
  verify->add_option("-o,--output", verify_output, "Report path (default stdout)");

  std::string bench_input, bench_output;
  int bench_samples = 10000;
  std::optional<std::uint64_t> bench_seed;
  CLI::App* bench = app.add_subcommand("bench", "Time the fast path against the dense oracle");
  bench->add_option("-i,--input", bench_input, "Generator-set JSON")->required();
  bench->add_option("--samples", bench_samples, "Positions to evaluate")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "Position sampling seed");
  bench->add_option("-o,--output", bench_output, "Report path (default stdout)");

  std::string demo_input, demo_output;
  int demo_tokens = 8;
  std::optional<std::uint64_t> demo_seed;
  CLI::App* demo = app.add_subcommand("demo", "Score-level relativity / shift / round-trip demo");
  demo->add_option("-i,--input", demo_input, "Generator-set JSON")->required();
  demo->add_option("--samples", demo_tokens, "Tokens per batch")->check(CLI::Range(1, 256));
  demo->add_option("--seed", demo_seed, "Batch sampling seed");
  demo->add_option("-o,--output", demo_output, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_flags);
    if (verify->parsed()) {
      return cmd_verify(verify_input, verify_samples, verify_tol, verify_grid, verify_seed,
                        verify_output);
    }
    if (bench->parsed()) return cmd_bench(bench_input, bench_samples, bench_seed, bench_output);
    if (demo->parsed()) return cmd_demo(demo_input, demo_tokens, demo_seed, demo_output);
  } catch (const ropealg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ropealg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
