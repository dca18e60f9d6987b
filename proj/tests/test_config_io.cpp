#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "gmcc/config_io.hpp"
#include "test_util.hpp"

using namespace gmcc;

TEST_CASE("kernel parsing: lambda canonical, beta accepted, consistency enforced") {
  GgdKernel k = parse_kernel(json{{"alpha", 4.0}, {"lambda", 0.03}});
  CHECK(k.alpha() == 4.0);
  CHECK(k.lambda() == 0.03);

  GgdKernel kb = parse_kernel(json{{"alpha", 2.0}, {"beta", 2.0}});
  CHECK(kb.lambda() == 0.25);

  // Consistent pair accepted; inconsistent rejected.
  json both{{"alpha", 2.0}, {"lambda", 0.25}, {"beta", 2.0}};
  CHECK_NOTHROW(parse_kernel(both));
  both["beta"] = 1.9;
  CHECK_THROWS_AS(parse_kernel(both), ConfigError);

  CHECK_THROWS_AS(parse_kernel(json{{"alpha", 2.0}}), ConfigError);
  CHECK_THROWS_AS(parse_kernel(json{{"lambda", 1.0}}), ConfigError);
  CHECK_THROWS_AS(parse_kernel(json{{"alpha", -1.0}, {"lambda", 1.0}}), ConfigError);

  json round = kernel_to_json(k);
  GgdKernel k2 = parse_kernel(round);
  CHECK(k2.lambda() == k.lambda());
  CHECK(k2.normalizer() == k.normalizer());
}

TEST_CASE("algorithm parsing: rules and aliases") {
  AlgorithmSpec g = parse_algorithm(
      json{{"rule", "gmcc"}, {"alpha", 4.0}, {"lambda", 0.03}, {"eta", 0.01}});
  CHECK(g.rule() == AlgorithmSpec::Rule::gmcc);
  CHECK(g.kernel().alpha() == 4.0);
  CHECK(g.eta() == 0.01);

  AlgorithmSpec l = parse_algorithm(json{{"rule", "lmp"}, {"p", 3.0}, {"eta", 0.1}});
  CHECK(l.rule() == AlgorithmSpec::Rule::lmp);
  CHECK(l.p() == 3.0);

  CHECK(parse_algorithm(json{{"rule", "sa"}, {"eta", 0.1}}).p() == 1.0);
  CHECK(parse_algorithm(json{{"rule", "lms"}, {"eta", 0.1}}).p() == 2.0);
  CHECK(parse_algorithm(json{{"rule", "lmf"}, {"eta", 0.1}}).p() == 4.0);

  AlgorithmSpec mcc = parse_algorithm(json{{"rule", "mcc"}, {"lambda", 0.5}, {"eta", 0.1}});
  CHECK(mcc.rule() == AlgorithmSpec::Rule::gmcc);
  CHECK(mcc.kernel().alpha() == 2.0);
  CHECK_THROWS_AS(parse_algorithm(json{{"rule", "mcc"}, {"alpha", 4.0},
                                       {"lambda", 0.5}, {"eta", 0.1}}),
                  ConfigError);

  CHECK_THROWS_AS(parse_algorithm(json{{"rule", "rls"}, {"eta", 0.1}}), ConfigError);
  CHECK_THROWS_AS(parse_algorithm(json{{"rule", "lmp"}, {"p", 3.0}}), ConfigError);
  // Sweep configs may omit eta.
  CHECK_NOTHROW(parse_algorithm(json{{"rule", "lmf"}}, "algorithm", false));

  json round = algorithm_to_json(g);
  CHECK(round["rule"] == "gmcc");
  AlgorithmSpec g2 = parse_algorithm(round);
  CHECK(g2.eta() == g.eta());
}

TEST_CASE("noise parsing round-trips every variant") {
  const char* text = R"({
    "kind": "mixture", "c": 0.06,
    "inner": {"kind": "uniform", "lo": -1.7320508075688772, "hi": 1.7320508075688772},
    "outer": {"kind": "gaussian", "mean": 0.0, "variance": 100.0}
  })";
  NoiseModel mix = parse_noise(json::parse(text));
  CHECK(mix.kind() == NoiseModel::Kind::mixture);
  CHECK(mix.mixture_weight() == 0.06);
  CHECK(mix.inner().kind() == NoiseModel::Kind::uniform);
  CHECK(mix.outer().variance() == 100.0);

  NoiseModel rt = parse_noise(noise_to_json(mix));
  CHECK(rt.variance() == mix.variance());

  CHECK(parse_noise(json{{"kind", "laplace"}, {"variance", 2.0}}).mean() == 0.0);
  CHECK(parse_noise(json{{"kind", "binary"}, {"magnitude", 1.0}}).kind() ==
        NoiseModel::Kind::binary);
  CHECK_THROWS_AS(parse_noise(json{{"kind", "cauchy"}}), ConfigError);
  CHECK_THROWS_AS(parse_noise(json{{"kind", "gaussian"}}), ConfigError);
  CHECK_THROWS_AS(parse_noise(json{{"kind", "mixture"}, {"c", 0.5}}), ConfigError);
  // Nested mixtures are rejected through the parser too.
  json nested = json::parse(text);
  json outer_mix{{"kind", "mixture"}, {"c", 0.5}, {"inner", nested},
                 {"outer", json{{"kind", "gaussian"}, {"variance", 1.0}}}};
  CHECK_THROWS_AS(parse_noise(outer_mix), ConfigError);
}

TEST_CASE("schema gate and field diagnostics") {
  CHECK_THROWS_AS(require_schema(json::parse("[1,2]")), ConfigError);
  CHECK_THROWS_AS(require_schema(json{{"schema", 2}}), ConfigError);
  CHECK_NOTHROW(require_schema(json{{"schema", 1}}));

  try {
    parse_setup(json{{"w0", json::array({0.1})}, {"input_variance", 1.0}});
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(e.field() == "setup.noise");
  }
}

TEST_CASE("format_double emits shortest round-trip representations") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(100.0) == "100");

  auto rng = SeededStream{3131, 0}.make_rng();
  for (int i = 0; i < 5000; ++i) {
    double scale = std::pow(10.0, static_cast<double>(rng.next_u64() % 61) - 30.0);
    double v = (rng.next_unit_open() - 0.5) * scale;
    std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(std::strtod(format_double(1e-300).c_str(), nullptr) == 1e-300);
  CHECK(std::strtod(format_double(-0.3000000000000001).c_str(), nullptr) ==
        -0.3000000000000001);
}

TEST_CASE("config hash is canonical and content-sensitive") {
  json a = json::parse(R"({"x": 1.5, "y": {"b": 2, "a": 3}})");
  json b = json::parse(R"({"y": {"a": 3, "b": 2}, "x": 1.5})");
  CHECK(config_hash(a) == config_hash(b));
  json c = a;
  c["x"] = 1.5000001;
  CHECK(config_hash(a) != config_hash(c));
  CHECK(config_hash(a).size() == 16);
}

TEST_CASE("csv writer formats numeric payloads with LF endings") {
  CsvWriter csv("config_hash=abc base_seed=7", {"eta", "pod"});
  csv.add_row({0.1, 0.0});
  csv.add_row({0.30000000000000004, 1.0});
  std::string expected =
      "# config_hash=abc base_seed=7\n"
      "eta,pod\n"
      "0.1,0\n"
      "0.30000000000000004,1\n";
  CHECK(csv.str() == expected);
  CHECK_THROWS_AS(csv.add_row({1.0}), std::logic_error);
}

TEST_CASE("atomic writes leave no temporary behind") {
  std::string path = "atomic_test_output.txt";
  write_file_atomic(path, "payload\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "payload");
  std::ifstream tmp(path + ".tmp");
  CHECK_FALSE(tmp.good());
  std::remove(path.c_str());
}

TEST_CASE("theory inputs parsing") {
  json cfg = json::parse(R"({
    "schema": 1,
    "kernel": {"alpha": 4.0, "lambda": 0.03},
    "eta": 0.001,
    "trace_rxx": 20.0,
    "noise": {"kind": "uniform", "lo": -1.7320508075688772, "hi": 1.7320508075688772}
  })");
  TheoryInputs inputs = parse_theory_inputs(cfg);
  CHECK(inputs.kernel.alpha() == 4.0);
  CHECK(inputs.eta == 0.001);
  CHECK(inputs.trace_rxx == 20.0);
  CHECK(inputs.noise.kind() == NoiseModel::Kind::uniform);
  cfg.erase("trace_rxx");
  CHECK_THROWS_AS(parse_theory_inputs(cfg), ConfigError);
}
