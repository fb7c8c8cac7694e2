#include "ropealg/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ropealg {

namespace {

using nlohmann::json;

std::vector<double> flat(const Matrix& m) {
  return std::vector<double>(m.data().begin(), m.data().end());
}

Matrix unflat(const std::vector<double>& entries, int d, const char* what) {
  if (static_cast<int>(entries.size()) != d * d) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(d * d) +
                     " entries, got " + std::to_string(entries.size()));
  }
  Matrix m(d, d);
  for (int i = 0; i < d * d; ++i) m.data()[i] = entries[i];
  if (!m.all_finite()) throw ParseError(std::string(what) + ": non-finite entries");
  return m;
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

json to_json(const GeneratorSet& gen) {
  json j;
  j["d"] = gen.d;
  j["n_axes"] = gen.n_axes;
  j["blocks_per_axis"] = gen.blocks_per_axis;
  j["base"] = gen.schedule.base;
  j["frequencies"] = gen.schedule.values;
  json basis = json::array();
  for (const Matrix& b : gen.basis) basis.push_back(flat(b));
  j["basis"] = std::move(basis);
  j["q"] = gen.q ? json(flat(*gen.q)) : json(nullptr);
  json flags = json::array();
  if (gen.degenerate) flags.push_back("degenerate");
  j["flags"] = std::move(flags);
  return j;
}

GeneratorSet generator_set_from_json(const json& j) {
  GeneratorSet gen;
  gen.d = field<int>(j, "d");
  gen.n_axes = field<int>(j, "n_axes");
  gen.blocks_per_axis = field<int>(j, "blocks_per_axis");
  if (gen.d <= 0 || gen.d % 2 != 0) {
    throw ParseError("generator set: d must be a positive even integer");
  }
  if (gen.n_axes <= 0 || gen.blocks_per_axis <= 0) {
    throw ParseError("generator set: n_axes and blocks_per_axis must be positive");
  }
  const double base = field<double>(j, "base");
  auto frequencies = field<std::vector<double>>(j, "frequencies");
  try {
    gen.schedule = FrequencySchedule::from_values(std::move(frequencies), base);
  } catch (const DomainError& e) {
    throw ParseError(std::string("generator set: ") + e.what());
  }
  const auto basis = field<std::vector<std::vector<double>>>(j, "basis");
  if (static_cast<int>(basis.size()) != gen.n_axes) {
    throw ParseError("generator set: expected " + std::to_string(gen.n_axes) +
                     " basis matrices, got " + std::to_string(basis.size()));
  }
  for (const auto& entries : basis) {
    gen.basis.push_back(unflat(entries, gen.d, "generator set basis"));
  }
  if (j.contains("q") && !j.at("q").is_null()) {
    gen.q = unflat(field<std::vector<double>>(j, "q"), gen.d, "generator set q");
  }
  if (j.contains("flags")) {
    for (const auto& f : field<std::vector<std::string>>(j, "flags")) {
      if (f == "degenerate") gen.degenerate = true;
    }
  }
  // Plans are not serialized; recover one from the basis when it exists.
  gen.plan = derive_block_plan(gen.basis, gen.q ? &*gen.q : nullptr, gen.d);
  return gen;
}

json to_json(const OrthoParam& p) {
  json j;
  j["kind"] = ortho_kind_name(p.kind);
  j["dim"] = p.dim;
  j["params"] = p.params;
  if (p.kind == OrthoKind::givens) {
    json plan = json::array();
    for (const auto& [a, b] : p.plan) plan.push_back(json::array({a, b}));
    j["plan"] = std::move(plan);
  } else {
    j["plan"] = nullptr;
  }
  return j;
}

OrthoParam ortho_param_from_json(const json& j) {
  OrthoParam p;
  try {
    p.kind = ortho_kind_from_name(field<std::string>(j, "kind"));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  p.dim = field<int>(j, "dim");
  p.params = field<std::vector<double>>(j, "params");
  if (j.contains("plan") && !j.at("plan").is_null()) {
    for (const auto& pair : field<std::vector<std::vector<int>>>(j, "plan")) {
      if (pair.size() != 2) throw ParseError("ortho param: plan entries must be [i, j] pairs");
      p.plan.emplace_back(pair[0], pair[1]);
    }
  }
  return p;
}

json to_json(const ValidationReport& report) {
  json j;
  j["verdict"] = report.verdict;
  j["seed"] = report.seed;
  json checks = json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back(json{{"name", c.name},
                          {"residual", c.residual},
                          {"threshold", c.threshold},
                          {"passed", c.passed},
                          {"detail", c.detail}});
  }
  j["checks"] = std::move(checks);
  return j;
}

json to_json(const TokenBatch& batch) {
  json positions = json::array();
  for (const PositionVector& x : batch.positions) positions.push_back(x.coords);
  return json{{"positions", std::move(positions)}, {"vectors", batch.vectors}};
}

TokenBatch token_batch_from_json(const json& j) {
  TokenBatch batch;
  for (auto& coords : field<std::vector<std::vector<double>>>(j, "positions")) {
    batch.positions.push_back(PositionVector{std::move(coords)});
  }
  batch.vectors = field<std::vector<std::vector<double>>>(j, "vectors");
  if (batch.positions.size() != batch.vectors.size()) {
    throw ParseError("token batch: positions/vectors count mismatch");
  }
  return batch;
}

std::string dump_stable(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << dump_stable(j);
}

GeneratorSet load_generator_set(const std::filesystem::path& path) {
  return generator_set_from_json(load_json_file(path));
}

OrthoParam load_ortho_param(const std::filesystem::path& path) {
  return ortho_param_from_json(load_json_file(path));
}

}  // namespace ropealg
