#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmcc/experiment.hpp"
#include "gmcc/filters.hpp"
#include "gmcc/kernel.hpp"
#include "gmcc/noise.hpp"
#include "gmcc/theory.hpp"

namespace gmcc {

/// Thrown on schema violations; carries the offending field path so the CLI
/// can print a usable diagnostic.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error("field '" + field + "': " + message), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

using json = nlohmann::json;

// Kernel: {"alpha": a, "lambda": l} or {"alpha": a, "beta": b}; lambda is
// canonical. If both are present they must agree.
GgdKernel parse_kernel(const json& j, const std::string& path = "kernel");
json kernel_to_json(const GgdKernel& k);

// Algorithm: {"rule": "gmcc", "alpha": ..., "lambda": ..., "eta": ...} or
// {"rule": "lmp", "p": ..., "eta": ...}; aliases sa/lms/lmf/mcc accepted.
// With require_eta = false a missing eta is tolerated (sweep configs supply
// it per grid point) and filled with the placeholder 1.0.
AlgorithmSpec parse_algorithm(const json& j, const std::string& path = "algorithm",
                              bool require_eta = true);
json algorithm_to_json(const AlgorithmSpec& spec);

// Noise: {"kind": "gaussian"|"uniform"|"laplace"|"binary"|"mixture", ...}.
NoiseModel parse_noise(const json& j, const std::string& path = "noise");
json noise_to_json(const NoiseModel& model);

SystemIdSetup parse_setup(const json& j, const std::string& path = "setup");
TheoryInputs parse_theory_inputs(const json& j);

/// Requires "schema": 1 at the top level.
void require_schema(const json& j);

// Field helpers used by the CLI subcommand parsers.
double get_number(const json& j, const std::string& key, const std::string& path);
double get_number_or(const json& j, const std::string& key, const std::string& path,
                     double fallback);
std::int64_t get_int(const json& j, const std::string& key, const std::string& path);
std::vector<double> get_number_list(const json& j, const std::string& key,
                                    const std::string& path);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// FNV-1a 64-bit hash of the canonical (sorted-key) JSON dump, hex encoded.
std::string config_hash(const json& j);

/// Write-then-rename so readers never observe partial output.
void write_file_atomic(const std::string& path, const std::string& contents);

/// CSV with a leading '#' metadata line (config hash and base seed), then a
/// mandatory header row; numeric cells use shortest round-trip formatting,
/// LF line endings throughout.
class CsvWriter {
 public:
  CsvWriter(std::string metadata_comment, std::vector<std::string> header);

  void add_row(const std::vector<double>& cells);
  std::string str() const { return out_; }

 private:
  std::string out_;
  std::size_t columns_;
};

}  // namespace gmcc
