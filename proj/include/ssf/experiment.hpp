#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssf/functions.hpp"
#include "ssf/models.hpp"

namespace ssf {

/// Bad configuration; `path` names the offending field ("model.dim").
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string path, const std::string& why)
      : std::invalid_argument(path + ": " + why), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct FunctionDescriptor {
  std::string family;  // resolvent | gaussian | bump
  Complex z{0.0, 1.0};
  int k = 1;
  double center = 0.0;
  double width = 1.0;
  double radius = 1.0;
  int degree = 6;

  TestFunction make() const;
  nlohmann::json to_json() const;
};

/// 8 resolvents, 6 Gaussians, 6 bumps.
std::vector<FunctionDescriptor> default_battery();

enum class Suite { verify, ssf, bounds, models, bench };
Suite parse_suite(const std::string& name);
std::string to_string(Suite s);

struct ExperimentConfig {
  Suite suite = Suite::verify;
  ModelSpec model;
  int n = 2;
  std::vector<double> epsilon{0.1, 0.5, 1.0, 2.0};
  std::vector<FunctionDescriptor> battery = default_battery();
  int trials = 1;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string report_name = "report.json";
  int grid = 201;
  bool record_runtime = false;

  /// Throws ConfigError with the JSON path of the first problem.
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;
};

struct Check {
  std::string name;
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string error;  // set when the computation itself failed
  bool pass() const { return error.empty() && residual <= tolerance; }
};

struct ResidualReport {
  std::string suite;
  std::vector<Check> checks;
  nlohmann::json aggregates = nlohmann::json::object();
  std::vector<std::string> files;
  std::optional<double> runtime_seconds;

  void add(Check c) { checks.push_back(std::move(c)); }
  bool all_pass() const;
  double max_residual() const;
  nlohmann::json to_json() const;
};

/// Runs the configured suite, writes the JSON report and any CSV/JSON
/// side files under config.out_dir.
ResidualReport run(const ExperimentConfig& config);

/// Same without touching the filesystem.
ResidualReport run_in_memory(const ExperimentConfig& config);

}  // namespace ssf
