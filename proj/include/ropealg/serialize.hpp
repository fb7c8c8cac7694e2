#ifndef ROPEALG_SERIALIZE_HPP
#define ROPEALG_SERIALIZE_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ropealg/apply.hpp"
#include "ropealg/generators.hpp"
#include "ropealg/ortho.hpp"
#include "ropealg/validate.hpp"

namespace ropealg {

// Schemas:
//   generator set   {"d", "n_axes", "blocks_per_axis", "base", "frequencies",
//                    "basis": [[row-major]], "q": [row-major] | null, "flags"}
//   ortho param     {"kind", "dim", "params", "plan": [[i, j]] | null}
//   report          {"verdict", "seed", "checks": [{name, residual, threshold,
//                    passed, detail}]}
//   token batch     {"positions": [[float]], "vectors": [[float]]}
// All loaders throw ParseError on malformed or schema-violating input.

nlohmann::json to_json(const GeneratorSet& gen);
GeneratorSet generator_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OrthoParam& p);
OrthoParam ortho_param_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ValidationReport& report);

nlohmann::json to_json(const TokenBatch& batch);
TokenBatch token_batch_from_json(const nlohmann::json& j);

// dump(2) plus a trailing newline; identical value -> identical bytes.
std::string dump_stable(const nlohmann::json& j);

nlohmann::json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

GeneratorSet load_generator_set(const std::filesystem::path& path);
OrthoParam load_ortho_param(const std::filesystem::path& path);

}  // namespace ropealg

#endif  // ROPEALG_SERIALIZE_HPP
