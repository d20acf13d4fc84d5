#include "apmin/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <set>

#include "apmin/emit.hpp"
#include "apmin/errors.hpp"

namespace apmin {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config: " + where + ": " + what);
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, unused] : obj.items()) {
    (void)unused;
    if (allowed.find(key) == allowed.end()) {
      fail(where, "unknown key '" + key + "'");
    }
  }
}

double number_at(const json& obj, const std::string& where,
                 const std::string& key) {
  if (!obj.at(key).is_number()) fail(where, "'" + key + "' must be a number");
  return obj.at(key).get<double>();
}

Vec vec_at(const json& obj, const std::string& where, const std::string& key) {
  const json& arr = obj.at(key);
  if (!arr.is_array() || arr.empty()) {
    fail(where, "'" + key + "' must be a nonempty array of numbers");
  }
  Vec v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) fail(where, "'" + key + "' must hold numbers");
    v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  }
  return v;
}

std::variant<double, std::vector<double>> schedule_at(const json& entry,
                                                      const std::string& where,
                                                      const std::string& key) {
  const json& v = entry.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && !v.empty()) {
    std::vector<double> table;
    for (const auto& item : v) {
      if (!item.is_number()) {
        fail(where, "'" + key + "' table must hold numbers");
      }
      table.push_back(item.get<double>());
    }
    return table;
  }
  fail(where, "'" + key + "' must be a number or a nonempty number array");
}

bool valid_run_name(const std::string& name) {
  if (name.empty() || name.size() > 128) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
           c == '_' || c == '.';
  });
}

RunRequest parse_run(const json& entry, std::size_t index) {
  const std::string where = "runs[" + std::to_string(index) + "]";
  if (!entry.is_object()) fail(where, "must be an object");
  require_keys(entry, where,
               {"name", "problem", "parameters", "z0", "lambda", "mu",
                "r_minus", "r_plus", "stop", "outputs", "record_stride",
                "tail_fraction"});
  if (!entry.contains("name") || !entry.at("name").is_string()) {
    fail(where, "'name' (string) is required");
  }
  if (!entry.contains("problem") || !entry.at("problem").is_string()) {
    fail(where, "'problem' (string) is required");
  }

  RunRequest req;
  req.name = entry.at("name").get<std::string>();
  if (!valid_run_name(req.name)) {
    fail(where, "'name' must use only [A-Za-z0-9._-]");
  }
  req.problem = entry.at("problem").get<std::string>();
  req.echo = entry;

  ProblemSpec spec = default_spec(req.problem);  // throws on unknown names

  if (entry.contains("parameters")) {
    const json& params = entry.at("parameters");
    if (!params.is_object()) fail(where, "'parameters' must be an object");
    for (const auto& [key, value] : params.items()) {
      if (!value.is_number()) {
        fail(where, "parameter '" + key + "' must be a number");
      }
      spec.parameters[key] = value.get<double>();
    }
  }

  if (entry.contains("z0")) {
    const json& z0 = entry.at("z0");
    if (!z0.is_object()) fail(where, "'z0' must be {\"x\": [...], \"y\": [...]}");
    require_keys(z0, where + ".z0", {"x", "y"});
    if (!z0.contains("x") || !z0.contains("y")) {
      fail(where, "'z0' needs both 'x' and 'y'");
    }
    spec.z0 = ProductPoint(vec_at(z0, where + ".z0", "x"),
                           vec_at(z0, where + ".z0", "y"));
  }

  if (entry.contains("r_minus")) {
    spec.schedule.r_minus = number_at(entry, where, "r_minus");
  }
  if (entry.contains("r_plus")) {
    spec.schedule.r_plus = number_at(entry, where, "r_plus");
  }
  if (entry.contains("lambda")) {
    spec.schedule.lambda = schedule_at(entry, where, "lambda");
  }
  if (entry.contains("mu")) {
    spec.schedule.mu = schedule_at(entry, where, "mu");
  }
  try {
    spec.schedule.validate();
  } catch (const ConfigError& e) {
    fail(where, e.what());
  }

  if (entry.contains("stop")) {
    const json& stop = entry.at("stop");
    if (!stop.is_object()) fail(where, "'stop' must be an object");
    require_keys(stop, where + ".stop",
                 {"max_iterations", "step_tol", "residual_tol"});
    if (stop.contains("max_iterations")) {
      if (!stop.at("max_iterations").is_number_integer()) {
        fail(where, "'max_iterations' must be an integer");
      }
      spec.stop.max_iterations = stop.at("max_iterations").get<long>();
    }
    if (stop.contains("step_tol")) {
      spec.stop.step_tol = number_at(stop, where + ".stop", "step_tol");
    }
    if (stop.contains("residual_tol")) {
      spec.stop.residual_tol = number_at(stop, where + ".stop", "residual_tol");
    }
  }
  try {
    spec.stop.validate();
  } catch (const ConfigError& e) {
    fail(where, e.what());
  }

  if (entry.contains("outputs")) {
    const json& outputs = entry.at("outputs");
    if (!outputs.is_object()) fail(where, "'outputs' must be an object");
    require_keys(outputs, where + ".outputs", {"csv", "rate_report", "svg"});
    auto flag = [&](const char* key, bool fallback) {
      if (!outputs.contains(key)) return fallback;
      if (!outputs.at(key).is_boolean()) {
        fail(where, std::string("'") + key + "' must be a boolean");
      }
      return outputs.at(key).get<bool>();
    };
    req.want_csv = flag("csv", true);
    req.want_rate_report = flag("rate_report", true);
    req.want_svg = flag("svg", false);
  }

  if (entry.contains("record_stride")) {
    if (!entry.at("record_stride").is_number_integer()) {
      fail(where, "'record_stride' must be an integer");
    }
    req.record_stride = entry.at("record_stride").get<long>();
    if (req.record_stride < 1) fail(where, "'record_stride' must be >= 1");
  }
  if (entry.contains("tail_fraction")) {
    req.tail_fraction = number_at(entry, where, "tail_fraction");
    if (!(req.tail_fraction > 0.0 && req.tail_fraction <= 1.0)) {
      fail(where, "'tail_fraction' must lie in (0, 1]");
    }
  }

  // Construct once now so bad parameters and dimension mismatches surface
  // at validation time, not mid-batch.
  BuiltProblem built = build_problem(spec);
  if (spec.z0.n() != built.problem.n() || spec.z0.m() != built.problem.m()) {
    fail(where, "z0 dimensions do not match problem '" + req.problem + "' (" +
                    std::to_string(built.problem.n()) + "+" +
                    std::to_string(built.problem.m()) + ")");
  }
  if (req.want_svg && (!built.C || !built.D || built.problem.n() != 2)) {
    fail(where, "svg output needs a 2-D feasibility problem");
  }

  req.spec = std::move(spec);
  return req;
}

}  // namespace

BatchConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: document must be an object");
  require_keys(doc, "top level", {"version", "runs"});
  if (!doc.contains("version") || !doc.at("version").is_number_integer()) {
    throw ConfigError("config: integer 'version' is required");
  }
  BatchConfig config;
  config.version = doc.at("version").get<int>();
  if (config.version != 1) {
    throw ConfigError("config: unsupported version " +
                      std::to_string(config.version) + " (expected 1)");
  }
  if (!doc.contains("runs") || !doc.at("runs").is_array()) {
    throw ConfigError("config: 'runs' array is required");
  }
  std::set<std::string> names;
  const json& runs = doc.at("runs");
  for (std::size_t i = 0; i < runs.size(); ++i) {
    RunRequest req = parse_run(runs[i], i);
    if (!names.insert(req.name).second) {
      throw ConfigError("config: duplicate run name '" + req.name + "'");
    }
    config.runs.push_back(std::move(req));
  }
  return config;
}

BatchConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

namespace {

// Seeded sanity pass over a built problem: the certified lower bound and
// the analytic coupling gradient are spot-checked at random points.
void sampling_diagnostics(const BuiltProblem& built, const ProblemSpec& spec,
                          unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (int i = 0; i < 32; ++i) {
    Vec x(built.problem.n()), y(built.problem.m());
    for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = unit(rng);
    for (Eigen::Index j = 0; j < y.size(); ++j) y(j) = unit(rng);
    ProductPoint z(x, y);
    double L = eval_L(built.problem, z);
    if (L < built.problem.lower_bound() - 1e-9) {
      throw Error("problem '" + spec.name +
                  "': sampled value below the certified lower bound");
    }
    if (check_gradient(built.problem, z, 1e-5) > 1e-6) {
      throw Error("problem '" + spec.name +
                  "': coupling gradient fails the finite-difference check");
    }
  }
}

RunOutput execute_run(const RunRequest& req, const BatchOptions& options) {
  RunOutput out;
  out.name = req.name;
  out.config_echo = req.echo;
  try {
    BuiltProblem built = build_problem(req.spec);
    sampling_diagnostics(built, req.spec, options.seed);
    Trajectory traj = run(built.problem, req.spec.z0, req.spec.schedule,
                          req.spec.stop, req.record_stride);
    out.status = to_string(traj.status);

    std::filesystem::path dir(options.output_dir);
    if (req.want_csv) {
      auto path = (dir / (req.name + ".csv")).string();
      emit_csv(traj, path);
      out.trajectory_csv_path = path;
    }
    if (req.want_rate_report) {
      nlohmann::json report;
      try {
        RateReport rate =
            classify_rate(distances_to_limit(traj), req.tail_fraction);
        report = rate_report_json(rate);
      } catch (const Error& e) {
        report["classification"] = nullptr;
        report["error"] = e.what();
      }
      report["status"] = to_string(traj.status);
      auto path = (dir / (req.name + ".rate.json")).string();
      std::ofstream js(path, std::ios::binary);
      if (!js) throw Error("cannot open '" + path + "' for writing");
      js << report.dump(2) << '\n';
      out.rate_report = report;
    }
    if (req.want_svg) {
      auto path = (dir / (req.name + ".svg")).string();
      emit_svg(traj, *built.C, *built.D, path);
      out.svg_path = path;
    }
  } catch (const std::exception& e) {
    out.status = "Error";
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<RunOutput> run_config(const BatchConfig& config,
                                  const BatchOptions& options) {
  std::filesystem::create_directories(options.output_dir);
  const int workers = std::max(1, options.max_concurrency);

  std::vector<RunOutput> outputs(config.runs.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < config.runs.size(); ++i) {
      outputs[i] = execute_run(config.runs[i], options);
    }
    return outputs;
  }

  // Window of at most `workers` futures in flight; results keep config order.
  std::vector<std::future<RunOutput>> inflight;
  std::vector<std::size_t> slots;
  std::size_t next = 0;
  while (next < config.runs.size() || !inflight.empty()) {
    while (next < config.runs.size() &&
           inflight.size() < static_cast<std::size_t>(workers)) {
      const RunRequest& req = config.runs[next];
      inflight.push_back(std::async(std::launch::async, execute_run,
                                    std::cref(req), std::cref(options)));
      slots.push_back(next);
      ++next;
    }
    outputs[slots.front()] = inflight.front().get();
    inflight.erase(inflight.begin());
    slots.erase(slots.begin());
  }
  return outputs;
}

}  // namespace apmin
