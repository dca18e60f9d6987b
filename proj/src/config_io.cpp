#include "gmcc/config_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace gmcc {

namespace {

const json* find(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) {
    throw ConfigError(path, "expected a number");
  }
  return j.get<double>();
}

}  // namespace

double get_number(const json& j, const std::string& key, const std::string& path) {
  const json* v = find(j, key);
  if (!v) {
    throw ConfigError(path + "." + key, "missing required field");
  }
  return as_number(*v, path + "." + key);
}

double get_number_or(const json& j, const std::string& key, const std::string& path,
                     double fallback) {
  const json* v = find(j, key);
  return v ? as_number(*v, path + "." + key) : fallback;
}

std::int64_t get_int(const json& j, const std::string& key, const std::string& path) {
  const json* v = find(j, key);
  if (!v) {
    throw ConfigError(path + "." + key, "missing required field");
  }
  if (!v->is_number_integer()) {
    throw ConfigError(path + "." + key, "expected an integer");
  }
  return v->get<std::int64_t>();
}

std::vector<double> get_number_list(const json& j, const std::string& key,
                                    const std::string& path) {
  const json* v = find(j, key);
  if (!v) {
    throw ConfigError(path + "." + key, "missing required field");
  }
  if (!v->is_array() || v->empty()) {
    throw ConfigError(path + "." + key, "expected a non-empty array of numbers");
  }
  std::vector<double> out;
  out.reserve(v->size());
  for (std::size_t i = 0; i < v->size(); ++i) {
    out.push_back(as_number((*v)[i], path + "." + key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void require_schema(const json& j) {
  if (!j.is_object()) {
    throw ConfigError("(root)", "config must be a JSON object");
  }
  const json* v = find(j, "schema");
  if (!v || !v->is_number_integer() || v->get<int>() != 1) {
    throw ConfigError("schema", "expected the integer 1");
  }
}

GgdKernel parse_kernel(const json& j, const std::string& path) {
  if (!j.is_object()) {
    throw ConfigError(path, "expected an object");
  }
  double alpha = get_number(j, "alpha", path);
  const json* lambda = find(j, "lambda");
  const json* beta = find(j, "beta");
  if (!lambda && !beta) {
    throw ConfigError(path, "one of 'lambda' or 'beta' is required");
  }
  try {
    if (lambda) {
      GgdKernel k =
          GgdKernel::from_lambda(alpha, as_number(*lambda, path + ".lambda"));
      if (beta) {
        double b = as_number(*beta, path + ".beta");
        if (std::abs(b - k.beta()) > 1e-9 * std::abs(k.beta())) {
          throw ConfigError(path + ".beta", "inconsistent with lambda");
        }
      }
      return k;
    }
    return GgdKernel::from_beta(alpha, as_number(*beta, path + ".beta"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

json kernel_to_json(const GgdKernel& k) {
  return json{{"alpha", k.alpha()}, {"lambda", k.lambda()}, {"beta", k.beta()}};
}

AlgorithmSpec parse_algorithm(const json& j, const std::string& path,
                              bool require_eta) {
  if (!j.is_object()) {
    throw ConfigError(path, "expected an object");
  }
  const json* rule = find(j, "rule");
  if (!rule || !rule->is_string()) {
    throw ConfigError(path + ".rule", "expected a string");
  }
  std::string name = rule->get<std::string>();
  double eta = require_eta ? get_number(j, "eta", path)
                           : get_number_or(j, "eta", path, 1.0);

  if (name == "gmcc" || name == "mcc") {
    double alpha = (name == "mcc") ? get_number_or(j, "alpha", path, 2.0)
                                   : get_number(j, "alpha", path);
    if (name == "mcc" && alpha != 2.0) {
      throw ConfigError(path + ".alpha", "'mcc' means alpha = 2");
    }
    double lambda = get_number(j, "lambda", path);
    try {
      return AlgorithmSpec::gmcc(GgdKernel::from_lambda(alpha, lambda), eta);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
  }

  double p;
  if (name == "lmp") {
    p = get_number(j, "p", path);
  } else if (name == "sa") {
    p = 1.0;
  } else if (name == "lms") {
    p = 2.0;
  } else if (name == "lmf") {
    p = 4.0;
  } else {
    throw ConfigError(path + ".rule",
                      "unknown rule '" + name +
                          "' (expected gmcc, lmp, sa, lms, lmf or mcc)");
  }
  try {
    return AlgorithmSpec::lmp(p, eta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

json algorithm_to_json(const AlgorithmSpec& spec) {
  if (spec.rule() == AlgorithmSpec::Rule::gmcc) {
    return json{{"rule", "gmcc"},
                {"alpha", spec.kernel().alpha()},
                {"lambda", spec.kernel().lambda()},
                {"eta", spec.eta()}};
  }
  return json{{"rule", "lmp"}, {"p", spec.p()}, {"eta", spec.eta()}};
}

NoiseModel parse_noise(const json& j, const std::string& path) {
  if (!j.is_object()) {
    throw ConfigError(path, "expected an object");
  }
  const json* kind = find(j, "kind");
  if (!kind || !kind->is_string()) {
    throw ConfigError(path + ".kind", "expected a string");
  }
  std::string name = kind->get<std::string>();
  try {
    if (name == "gaussian") {
      return NoiseModel::gaussian(get_number_or(j, "mean", path, 0.0),
                                  get_number(j, "variance", path));
    }
    if (name == "uniform") {
      return NoiseModel::uniform(get_number(j, "lo", path), get_number(j, "hi", path));
    }
    if (name == "laplace") {
      return NoiseModel::laplace(get_number_or(j, "mean", path, 0.0),
                                 get_number(j, "variance", path));
    }
    if (name == "binary") {
      return NoiseModel::binary_symmetric(get_number(j, "magnitude", path));
    }
    if (name == "mixture") {
      const json* inner = find(j, "inner");
      const json* outer = find(j, "outer");
      if (!inner || !outer) {
        throw ConfigError(path, "mixture requires 'inner' and 'outer'");
      }
      return NoiseModel::mixture(get_number(j, "c", path),
                                 parse_noise(*inner, path + ".inner"),
                                 parse_noise(*outer, path + ".outer"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path + ".kind", "unknown kind '" + name + "'");
}

json noise_to_json(const NoiseModel& model) {
  switch (model.kind()) {
    case NoiseModel::Kind::gaussian:
      return json{{"kind", "gaussian"},
                  {"mean", model.param_a()},
                  {"variance", model.param_b()}};
    case NoiseModel::Kind::uniform:
      return json{{"kind", "uniform"}, {"lo", model.param_a()}, {"hi", model.param_b()}};
    case NoiseModel::Kind::laplace:
      return json{{"kind", "laplace"},
                  {"mean", model.param_a()},
                  {"variance", model.param_b()}};
    case NoiseModel::Kind::binary:
      return json{{"kind", "binary"}, {"magnitude", model.param_a()}};
    case NoiseModel::Kind::mixture:
      return json{{"kind", "mixture"},
                  {"c", model.mixture_weight()},
                  {"inner", noise_to_json(model.inner())},
                  {"outer", noise_to_json(model.outer())}};
  }
  return json();
}

SystemIdSetup parse_setup(const json& j, const std::string& path) {
  if (!j.is_object()) {
    throw ConfigError(path, "expected an object");
  }
  const json* noise = find(j, "noise");
  if (!noise) {
    throw ConfigError(path + ".noise", "missing required field");
  }
  return SystemIdSetup{get_number_list(j, "w0", path),
                       get_number(j, "input_variance", path),
                       parse_noise(*noise, path + ".noise")};
}

TheoryInputs parse_theory_inputs(const json& j) {
  const json* kernel = find(j, "kernel");
  if (!kernel) {
    throw ConfigError("kernel", "missing required field");
  }
  const json* noise = find(j, "noise");
  if (!noise) {
    throw ConfigError("noise", "missing required field");
  }
  return TheoryInputs{parse_kernel(*kernel), get_number(j, "eta", "(root)"),
                      get_number(j, "trace_rxx", "(root)"),
                      parse_noise(*noise)};
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  }
  return std::string(buf, ptr);
}

std::string config_hash(const json& j) {
  std::string canonical = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + tmp + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
      throw std::runtime_error("short write to '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

CsvWriter::CsvWriter(std::string metadata_comment, std::vector<std::string> header)
    : columns_(header.size()) {
  out_ = "# " + std::move(metadata_comment) + "\n";
  for (std::size_t i = 0; i < header.size(); ++i) {
    out_ += header[i];
    out_ += (i + 1 < header.size()) ? "," : "\n";
  }
}

void CsvWriter::add_row(const std::vector<double>& cells) {
  if (cells.size() != columns_) {
    throw std::logic_error("CsvWriter: row width does not match header");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out_ += format_double(cells[i]);
    out_ += (i + 1 < cells.size()) ? "," : "\n";
  }
}

}  // namespace gmcc
