// End-to-end checks of the command-line tool: spawns the built binary with
// generated configs in a scratch directory and inspects exit codes and
// output bytes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmcc/theory.hpp"

#ifndef GMCC_CLI_PATH
#error "GMCC_CLI_PATH must point at the built CLI binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Invocation {
  int exit_code = -1;
};

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "gmcc_cli_test";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(GMCC_CLI_PATH) + " " + args + " 2> /dev/null";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

const char* kQuickPodConfig = R"({
  "schema": 1,
  "algorithm": {"rule": "gmcc", "alpha": 4.0, "lambda": 1.0},
  "setup": {
    "w0": [0.1, 0.2, 0.3, 0.4, 0.5, 0.4, 0.3, 0.2, 0.1],
    "input_variance": 1.0,
    "noise": {"kind": "gaussian", "mean": 0.0, "variance": 1.0}
  },
  "iterations": 300,
  "num_runs": 20,
  "base_seed": 17291,
  "divergence_threshold": 100.0,
  "etas": [0.001, 0.01, 0.1]
})";

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("pod subcommand: zero divergence for gmcc, deterministic reruns") {
  fs::path dir = scratch_dir();
  fs::path cfg = dir / "pod.json";
  fs::path out = dir / "pod.csv";
  write(cfg, kQuickPodConfig);

  CHECK(run_cli("pod --config " + cfg.string() + " --out " + out.string()) == 0);
  std::string first = slurp(out);
  auto rows = parse_csv(first);
  REQUIRE(rows.size() == 4);  // header + 3 etas
  CHECK(rows[0] == std::vector<std::string>{"eta", "diverged_count", "total_runs", "pod"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][1] == "0");
    CHECK(rows[i][3] == "0");
  }
  CHECK(first.rfind("# config_hash=", 0) == 0);

  // Byte-identical on rerun, and across thread counts.
  CHECK(run_cli("pod --config " + cfg.string() + " --out " + out.string()) == 0);
  CHECK(slurp(out) == first);
  setenv("GMCC_THREADS", "1", 1);
  CHECK(run_cli("pod --config " + cfg.string() + " --out " + out.string()) == 0);
  unsetenv("GMCC_THREADS");
  CHECK(slurp(out) == first);

  // Metadata sidecar carries the hash and seed.
  json meta = json::parse(slurp(out.string() + ".meta.json"));
  CHECK(meta["schema"] == 1);
  CHECK(meta["base_seed"] == 17291);
  CHECK(meta["subcommand"] == "pod");
  CHECK(first.find(meta["config_hash"].get<std::string>()) != std::string::npos);
}

TEST_CASE("malformed or invalid configs exit 2 and write nothing") {
  fs::path dir = scratch_dir();
  fs::path bad = dir / "bad.json";
  fs::path out = dir / "never.csv";
  std::error_code ec;
  fs::remove(out, ec);

  write(bad, "{ not json at all");
  CHECK(run_cli("pod --config " + bad.string() + " --out " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out));

  write(bad, R"({"schema": 1, "algorithm": {"rule": "gmcc"}})");
  CHECK(run_cli("pod --config " + bad.string() + " --out " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out));

  write(bad, R"({"schema": 7})");
  CHECK(run_cli("pod --config " + bad.string() + " --out " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out));

  CHECK(run_cli("pod --config " + (dir / "missing.json").string() + " --out " +
                out.string()) == 2);
}

TEST_CASE("theory subcommand matches the library prediction") {
  fs::path dir = scratch_dir();
  fs::path cfg = dir / "theory.json";
  fs::path out = dir / "theory.json.out";
  write(cfg, R"({
    "schema": 1,
    "kernel": {"alpha": 4.0, "lambda": 0.03},
    "eta": 0.001,
    "trace_rxx": 20.0,
    "noise": {"kind": "uniform", "lo": -1.7320508075688772, "hi": 1.7320508075688772}
  })");
  CHECK(run_cli("theory --config " + cfg.string() + " --out " + out.string()) == 0);
  json result = json::parse(slurp(out));

  gmcc::TheoryInputs inputs{gmcc::GgdKernel::from_lambda(4.0, 0.03), 0.001, 20.0,
                            gmcc::NoiseModel::uniform(-1.7320508075688772,
                                                      1.7320508075688772)};
  gmcc::EmseResult expected = gmcc::steady_state_emse(inputs);
  CHECK(result["full"].get<double>() == expected.full);
  CHECK(result["simplified"].get<double>() == expected.simplified);
  CHECK(result["full_valid"].get<bool>() == expected.full_valid);
  CHECK(result["diagnostics"]["mean_slope"].get<double>() == expected.mean_slope);
}

TEST_CASE("kernel-eval subcommand evaluates densities and estimators") {
  fs::path dir = scratch_dir();
  fs::path cfg = dir / "kernel.json";
  fs::path out = dir / "kernel.out.json";
  write(cfg, R"({
    "schema": 1,
    "kernel": {"alpha": 2.0, "beta": 1.4142135623730951},
    "e": [0.0, 1.0],
    "x": [1.0, 2.0],
    "y": [1.0, 2.0]
  })");
  CHECK(run_cli("kernel-eval --config " + cfg.string() + " --out " + out.string()) == 0);
  json result = json::parse(slurp(out));
  CHECK(std::abs(result["density"][0].get<double>() - 0.3989422804014327) < 1e-12);
  CHECK(result["gc_loss"].get<double>() == 0.0);
  CHECK(result["gcim"].get<double>() == 0.0);
  CHECK(result["correntropy"].get<double>() == result["normalizer"].get<double>());
}

TEST_CASE("emse subcommand sweeps etas and flags invalid theory rows") {
  fs::path dir = scratch_dir();
  fs::path cfg = dir / "emse.json";
  fs::path out = dir / "emse.csv";
  write(cfg, R"({
    "schema": 1,
    "algorithm": {"rule": "gmcc", "alpha": 4.0, "lambda": 0.03},
    "setup": {
      "w0": [0.1, 0.1, 0.1, 0.1, 0.1],
      "input_variance": 1.0,
      "noise": {"kind": "uniform", "lo": -1.7320508075688772, "hi": 1.7320508075688772}
    },
    "iterations": 2000,
    "num_runs": 4,
    "base_seed": 11,
    "steady_window": 200,
    "etas": [0.004, 0.2]
  })");
  CHECK(run_cli("emse --config " + cfg.string() + " --out " + out.string()) == 0);
  auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][4] == "full_valid");
  CHECK(rows[1][4] == "1");
  // Tr = 5, eta = 0.2 -> eta*Tr*E[zeta] ~ 10 >> 2 E[f'], far past validity.
  CHECK(rows[2][4] == "0");
}

TEST_CASE("converge subcommand emits one labeled column per algorithm") {
  fs::path dir = scratch_dir();
  fs::path cfg = dir / "conv.json";
  fs::path out = dir / "conv.csv";
  write(cfg, R"({
    "schema": 1,
    "algorithms": [
      {"label": "gmcc_a4", "spec": {"rule": "gmcc", "alpha": 4.0, "lambda": 0.1, "eta": 0.05}},
      {"label": "lms", "spec": {"rule": "lms", "eta": 0.01}}
    ],
    "setup": {
      "w0": [0.1, 0.2, 0.3, 0.4, 0.5, 0.4, 0.3, 0.2, 0.1],
      "input_variance": 1.0,
      "noise": {"kind": "gaussian", "mean": 0.0, "variance": 1.0}
    },
    "iterations": 250,
    "num_runs": 5,
    "base_seed": 2718
  })");
  CHECK(run_cli("converge --config " + cfg.string() + " --out " + out.string()) == 0);
  auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 251);
  CHECK(rows[0] == std::vector<std::string>{"iteration", "gmcc_a4", "lms"});
  // Learning curves start near the initial weight-error power and decay.
  double first = std::strtod(rows[1][1].c_str(), nullptr);
  double last = std::strtod(rows[250][1].c_str(), nullptr);
  CHECK(first > last);

  // Labels that would break the unquoted CSV dialect are rejected.
  write(cfg, R"({
    "schema": 1,
    "algorithms": [{"label": "bad label", "spec": {"rule": "lms", "eta": 0.01}}],
    "setup": {
      "w0": [0.1], "input_variance": 1.0,
      "noise": {"kind": "gaussian", "variance": 1.0}
    },
    "iterations": 10, "num_runs": 2, "base_seed": 1
  })");
  CHECK(run_cli("converge --config " + cfg.string() + " --out " + out.string()) == 2);
}

TEST_CASE("overrides: --set, --runs and --seed rewrite the effective config") {
  fs::path dir = scratch_dir();
  fs::path cfg = dir / "pod2.json";
  fs::path out_a = dir / "pod_a.csv";
  fs::path out_b = dir / "pod_b.csv";
  write(cfg, kQuickPodConfig);

  CHECK(run_cli("pod --config " + cfg.string() + " --out " + out_a.string() +
                " --runs 10 --seed 99") == 0);
  json meta = json::parse(slurp(out_a.string() + ".meta.json"));
  CHECK(meta["base_seed"] == 99);
  auto rows = parse_csv(slurp(out_a));
  CHECK(rows[1][2] == "10");

  // --set with a dotted path changes the hash (and the result).
  CHECK(run_cli("pod --config " + cfg.string() + " --out " + out_b.string() +
                " --runs 10 --seed 99 --set algorithm.lambda=0.5") == 0);
  json meta_b = json::parse(slurp(out_b.string() + ".meta.json"));
  CHECK(meta["config_hash"] != meta_b["config_hash"]);

  CHECK(run_cli("pod --config " + cfg.string() + " --out " + out_b.string() +
                " --set nonsense") == 2);
}
