#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef ROPEALG_CLI_PATH
#define ROPEALG_CLI_PATH "ropealg"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
  std::string stderr_text;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

class CliSandbox {
 public:
  CliSandbox() {
    dir_ = fs::temp_directory_path() / ("ropealg_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~CliSandbox() { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  RunResult run(const std::string& args, const std::string& env = "") const {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += std::string(ROPEALG_CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
           err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.stdout_text = slurp(out);
    r.stderr_text = slurp(err);
    return r;
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes the canonical 2-axis pair") {
  CliSandbox box;
  const auto g = box.path("g.json");
  CHECK(box.run("gen --axes 2 --blocks 1 --theta 1.0 -o " + g.string()).exit_code == 0);
  const json j = json::parse(slurp(g));
  CHECK(j["d"] == 4);
  CHECK(j["n_axes"] == 2);
  const std::vector<double> b1 = j["basis"][0];
  const std::vector<double> b2 = j["basis"][1];
  const std::vector<double> expected1{0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  const std::vector<double> expected2{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0};
  CHECK(b1 == expected1);
  CHECK(b2 == expected2);
  CHECK(j["q"].is_null());
}

TEST_CASE("gen -> verify -> demo pipeline exit codes") {
  CliSandbox box;
  const auto g = box.path("g.json");
  const auto m = box.path("m.json");

  CHECK(box.run("gen --axes 2 --blocks 1 --theta 1.0 -o " + g.string()).exit_code == 0);
  CHECK(box.run("verify -i " + g.string() + " -o " + box.path("rg.json").string()).exit_code == 0);
  CHECK(box.run("demo -i " + g.string() + " -o " + box.path("dg.json").string()).exit_code == 0);

  CHECK(box.run("gen --mixed --theta 1.0 2.0 -o " + m.string()).exit_code == 0);
  const RunResult verify_mixed =
      box.run("verify -i " + m.string() + " -o " + box.path("rm.json").string());
  CHECK(verify_mixed.exit_code == 1);

  const json report = json::parse(slurp(box.path("rm.json")));
  CHECK(report["verdict"] == false);
  std::vector<std::string> failing;
  for (const auto& c : report["checks"]) {
    if (!c["passed"].get<bool>()) failing.push_back(c["name"].get<std::string>());
  }
  CHECK(failing == std::vector<std::string>{"independence", "reversibility"});

  const RunResult demo_mixed = box.run("demo -i " + m.string() + " -o " + box.path("dm.json").string());
  CHECK(demo_mixed.exit_code == 1);
  const json demo_report = json::parse(slurp(box.path("dm.json")));
  CHECK(demo_report["roundtrip_rank_deficient"] == true);
  CHECK(demo_report["relativity_residual"].get<double>() < 1e-9);
}

TEST_CASE("conjugated generation passes verification") {
  CliSandbox box;
  const auto g = box.path("gc.json");
  CHECK(box.run("gen --axes 2 --blocks 2 --conjugate givens --seed 7 -o " + g.string())
            .exit_code == 0);
  const json j = json::parse(slurp(g));
  CHECK(j["d"] == 8);
  CHECK_FALSE(j["q"].is_null());
  CHECK(box.run("verify -i " + g.string()).exit_code == 0);
}

TEST_CASE("embedding via --d reproduces the larger-algebra construction") {
  CliSandbox box;
  const auto g = box.path("g6.json");
  CHECK(box.run("gen --axes 2 --blocks 1 --theta 1.0 --d 6 -o " + g.string()).exit_code == 0);
  const json j = json::parse(slurp(g));
  CHECK(j["d"] == 6);
  CHECK(box.run("verify -i " + g.string()).exit_code == 0);
}

TEST_CASE("domain errors exit 1 with a rank-bound message") {
  CliSandbox box;
  const RunResult r = box.run("gen --axes 3 --blocks 1 --d 4");
  CHECK(r.exit_code == 1);
  CHECK(r.stderr_text.find("floor(d/2) >= N") != std::string::npos);
}

TEST_CASE("usage and parse errors exit 2") {
  CliSandbox box;
  CHECK(box.run("gen --no-such-flag").exit_code == 2);
  CHECK(box.run("verify").exit_code == 2);               // missing -i
  CHECK(box.run("gen --mixed --axes 3").exit_code == 2);  // conflicting flags
  const auto g = box.path("g.json");
  box.run("gen -o " + g.string());
  CHECK(box.run("bench -i " + g.string() + " --samples 0").exit_code == 2);

  const auto truncated = box.path("truncated.json");
  {
    std::ofstream out(truncated);
    out << slurp(g).substr(0, 25);
  }
  CHECK(box.run("verify -i " + truncated.string()).exit_code == 2);
}

TEST_CASE("bench asserts agreement and a real speedup") {
  CliSandbox box;
  const auto g = box.path("g.json");
  box.run("gen --axes 2 --blocks 16 -o " + g.string());  // d = 64, q = I
  const auto b = box.path("b.json");
  CHECK(box.run("bench -i " + g.string() + " --samples 60 -o " + b.string()).exit_code == 0);
  const json j = json::parse(slurp(b));
  CHECK(j["d"] == 64);
  CHECK(j["max_disagreement"].get<double>() < 1e-10);
  CHECK(j["speedup_median"].get<double>() > 1.0);
  CHECK(j["pass"] == true);
}

TEST_CASE("fixed seeds make byte-identical outputs") {
  CliSandbox box;
  const auto a = box.path("a.json");
  const auto b = box.path("b.json");
  box.run("gen --axes 2 --blocks 2 --conjugate cayley --seed 11 -o " + a.string());
  box.run("gen --axes 2 --blocks 2 --conjugate cayley --seed 11 -o " + b.string());
  const std::string gen_a = slurp(a);
  CHECK_FALSE(gen_a.empty());
  CHECK(gen_a == slurp(b));

  box.run("demo -i " + a.string() + " --seed 5 -o " + box.path("d1.json").string());
  box.run("demo -i " + a.string() + " --seed 5 -o " + box.path("d2.json").string());
  CHECK(slurp(box.path("d1.json")) == slurp(box.path("d2.json")));

  box.run("verify -i " + a.string() + " -o " + box.path("v1.json").string());
  box.run("verify -i " + a.string() + " -o " + box.path("v2.json").string());
  CHECK(slurp(box.path("v1.json")) == slurp(box.path("v2.json")));
}

TEST_CASE("environment variable seeds the generator") {
  CliSandbox box;
  const auto via_env = box.path("env.json");
  const auto via_flag = box.path("flag.json");
  box.run("gen --axes 2 --blocks 1 --conjugate exp -o " + via_env.string(),
          "ROPE_ALGEBRA_SEED=123");
  box.run("gen --axes 2 --blocks 1 --conjugate exp --seed 123 -o " + via_flag.string());
  const std::string env_bytes = slurp(via_env);
  CHECK_FALSE(env_bytes.empty());
  CHECK(env_bytes == slurp(via_flag));
}

TEST_CASE("ortho-file conjugation round trip") {
  CliSandbox box;
  // Hand-written parameter file: a single givens angle on the (0, 1) plane.
  const auto p = box.path("p.json");
  {
    std::ofstream out(p);
    out << R"({"kind": "givens", "dim": 4, "params": [0.5], "plan": [[0, 1]]})";
  }
  const auto g = box.path("g.json");
  CHECK(box.run("gen --axes 2 --blocks 1 --ortho-file " + p.string() + " -o " + g.string())
            .exit_code == 0);
  CHECK(box.run("verify -i " + g.string()).exit_code == 0);
  // Kind mismatch between the flag and the file is a domain error.
  CHECK(box.run("gen --axes 2 --blocks 1 --conjugate cayley --ortho-file " + p.string() + " -o " +
                box.path("x.json").string())
            .exit_code == 1);
}

}  // TEST_SUITE
