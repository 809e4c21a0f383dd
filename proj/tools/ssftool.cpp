// ssftool: run a verification suite and write a JSON report.
//
//   ssftool --config run.json
//   ssftool --suite ssf --seed 7 --out results --grid 401
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on a bad
// configuration or command line.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssf/experiment.hpp"

namespace {

using nlohmann::json;

// Config file wins; the flag is only used when the file leaves it unset.
template <typename T>
void merge_flag(json& j, const json::json_pointer& ptr, const T& value, const char* flag) {
  if (j.contains(ptr)) {
    if (j.at(ptr) != json(value)) {
      std::cerr << "warning: " << flag << " ignored, config file sets " << ptr.to_string()
                << " = " << j.at(ptr).dump() << "\n";
    }
    return;
  }
  j[ptr] = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral shift function experiments"};
  std::string config_path, suite, out_dir;
  std::uint64_t seed = 0;
  int grid = 0;
  bool quiet = false;
  auto* config_opt = app.add_option("--config", config_path, "experiment config (JSON)")
                         ->check(CLI::ExistingFile);
  auto* suite_opt = app.add_option("--suite", suite, "verify | ssf | bounds | models | bench");
  auto* seed_opt = app.add_option("--seed", seed, "base seed");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  auto* grid_opt = app.add_option("--grid", grid, "points of the eta CSV grid");
  app.add_flag("-q,--quiet", quiet, "only print the summary line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  json j = json::object();
  if (*config_opt) {
    std::ifstream in(config_path);
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      std::cerr << "config error: " << config_path << ": " << e.what() << "\n";
      return 2;
    }
    if (!j.is_object()) {
      std::cerr << "config error: <root>: expected an object\n";
      return 2;
    }
  }
  if (*suite_opt) merge_flag(j, json::json_pointer("/suite"), suite, "--suite");
  if (*seed_opt) merge_flag(j, json::json_pointer("/seed"), seed, "--seed");
  if (*grid_opt) merge_flag(j, json::json_pointer("/grid"), grid, "--grid");
  if (*out_opt) merge_flag(j, json::json_pointer("/output/dir"), out_dir, "--out");

  ssf::ExperimentConfig config;
  try {
    config = ssf::ExperimentConfig::from_json(j);
  } catch (const ssf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  ssf::ResidualReport report;
  try {
    report = ssf::run(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (!quiet) {
    for (const auto& c : report.checks) {
      if (!c.pass()) {
        std::cerr << "FAIL " << c.name << " residual=" << c.residual
                  << " tolerance=" << c.tolerance
                  << (c.error.empty() ? "" : " error=" + c.error) << "\n";
      }
    }
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                    [](const ssf::Check& c) { return !c.pass(); });
  std::cout << report.suite << ": " << report.checks.size() - failed << "/"
            << report.checks.size() << " checks passed, max residual "
            << report.max_residual() << ", report "
            << config.out_dir + "/" + config.report_name << "\n";
  return failed == 0 ? 0 : 1;
}
