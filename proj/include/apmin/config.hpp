#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apmin/zoo.hpp"

namespace apmin {

/// One run request: a registry problem plus overrides of its defaults.
struct RunRequest {
  std::string name;          // unique, used for output file names
  std::string problem;       // registry name or alias
  ProblemSpec spec;          // fully resolved (defaults + overrides)
  long record_stride = 1;
  double tail_fraction = 0.5;
  bool want_csv = true;
  bool want_rate_report = true;
  bool want_svg = false;
  nlohmann::json echo;       // the raw entry as parsed
};

struct BatchConfig {
  int version = 1;
  std::vector<RunRequest> runs;
};

/// Parse and validate a whole config document. Throws ConfigError with a
/// message naming the offending entry on any schema violation.
BatchConfig parse_config(const nlohmann::json& doc);
BatchConfig load_config(const std::string& path);

struct RunOutput {
  std::string name;
  std::string status;  // run status, or "Error"
  std::optional<std::string> trajectory_csv_path;
  std::optional<nlohmann::json> rate_report;
  std::optional<std::string> svg_path;
  nlohmann::json config_echo;
  std::optional<std::string> error;
};

struct BatchOptions {
  std::string output_dir = ".";
  int max_concurrency = 1;
  unsigned long long seed = 12345;
};

/// Execute every run (independent runs may execute concurrently), write the
/// requested outputs to run-unique paths under output_dir, and return one
/// summary per run. Per-run failures become error entries; they never abort
/// the batch. Given the same config and seed the emitted files are
/// byte-identical across invocations.
std::vector<RunOutput> run_config(const BatchConfig& config,
                                  const BatchOptions& options);

}  // namespace apmin
