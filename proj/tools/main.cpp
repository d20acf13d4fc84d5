#include <CLI11.hpp>
#include <iostream>

#include "apmin/config.hpp"
#include "apmin/emit.hpp"

namespace {

int cmd_list_problems() {
  std::printf("%-6s %-20s %-22s %s\n", "id", "name", "family", "description");
  for (const auto& entry : apmin::registry()) {
    std::printf("%-6s %-20s %-22s %s\n", entry.alias.c_str(),
                entry.name.c_str(), apmin::to_string(entry.family).c_str(),
                entry.description.c_str());
    if (!entry.default_parameters.empty()) {
      std::printf("%-6s %-20s   defaults:", "", "");
      for (const auto& [key, value] : entry.default_parameters) {
        std::printf(" %s=%s", key.c_str(),
                    apmin::format_double(value).c_str());
      }
      std::printf("\n");
    }
  }
  return 0;
}

int cmd_check(const std::string& path) {
  try {
    apmin::BatchConfig config = apmin::load_config(path);
    std::cout << "OK: " << config.runs.size() << " run(s) validated\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  }
}

int cmd_run(const std::string& path, const apmin::BatchOptions& options) {
  apmin::BatchConfig config;
  try {
    config = apmin::load_config(path);
  } catch (const std::exception& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  }
  std::vector<apmin::RunOutput> outputs;
  try {
    outputs = apmin::run_config(config, options);
  } catch (const std::exception& e) {
    std::cerr << "batch failed: " << e.what() << "\n";
    return 2;
  }
  bool any_error = false;
  for (const auto& out : outputs) {
    std::cout << out.name << ": " << out.status;
    if (out.error) {
      any_error = true;
      std::cout << " (" << *out.error << ")";
    } else {
      if (out.trajectory_csv_path) std::cout << "  " << *out.trajectory_csv_path;
      if (out.rate_report && out.rate_report->contains("classification") &&
          !out.rate_report->at("classification").is_null()) {
        std::cout << "  rate="
                  << out.rate_report->at("classification").get<std::string>();
      }
      if (out.svg_path) std::cout << "  " << *out.svg_path;
    }
    std::cout << "\n";
  }
  return any_error ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Alternating proximal minimization on a zoo of coupled and "
      "feasibility problems"};
  app.require_subcommand(1);

  apmin::BatchOptions options;
  std::string config_path;

  CLI::App* run_cmd = app.add_subcommand("run", "execute a batch config");
  run_cmd->add_option("config", config_path, "JSON config file")->required();
  run_cmd->add_option("--output-dir", options.output_dir,
                      "directory for CSV/JSON/SVG outputs");
  run_cmd->add_option("--max-concurrency", options.max_concurrency,
                      "max runs in flight (independent runs only)");
  run_cmd->add_option("--seed", options.seed,
                      "seed for the sampling diagnostics");

  CLI::App* check_cmd =
      app.add_subcommand("check", "validate a config without running it");
  check_cmd->add_option("config", config_path, "JSON config file")->required();

  CLI::App* list_cmd =
      app.add_subcommand("list-problems", "show the problem registry");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand(run_cmd)) return cmd_run(config_path, options);
  if (app.got_subcommand(check_cmd)) return cmd_check(config_path);
  if (app.got_subcommand(list_cmd)) return cmd_list_problems();
  return 2;
}
