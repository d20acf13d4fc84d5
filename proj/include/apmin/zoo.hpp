#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "apmin/sets.hpp"
#include "apmin/solver.hpp"

namespace apmin {

enum class Family {
  Feasibility,
  LeastSquaresCoupled,
  SoftThresholdDecoupled,
  MorseCoupled,
  UniformlyConvex,
  MetricRegular,
};

std::string to_string(Family family);

/// A named, parameterized problem instance plus how to run it.
struct ProblemSpec {
  std::string name;  // registry key (canonical name or alias)
  Family family;
  std::map<std::string, double> parameters;
  ProductPoint z0;
  StepSchedule schedule;
  StopCriteria stop;
};

/// A constructed problem. Feasibility instances also carry their two set
/// oracles for projection-level diagnostics and drawing.
struct BuiltProblem {
  BiFunctionProblem problem;
  std::shared_ptr<const SetOracle> C;  // feasibility only
  std::shared_ptr<const SetOracle> D;  // feasibility only
  std::string description;
};

struct RegistryEntry {
  std::string name;    // canonical, e.g. "lines-transverse"
  std::string alias;   // short id, e.g. "Z1"
  Family family;
  std::string description;
  std::map<std::string, double> default_parameters;
};

/// The built-in problem registry, in catalog order.
const std::vector<RegistryEntry>& registry();

/// Resolve a canonical name or alias; throws ConfigError listing the
/// registry when the name is unknown.
const RegistryEntry& registry_lookup(const std::string& name);

/// The registry defaults for a problem (parameters, z0, schedule, stop).
ProblemSpec default_spec(const std::string& name);

/// Materialize a ProblemSpec into oracles. Validates parameter names and
/// ranges.
BuiltProblem build_problem(const ProblemSpec& spec);

/// The coupling bifunction of two sets:
///   L(x,y) = delta_C(x) + 1/2||x-y||^2 + delta_D(y),  lower bound 0.
BiFunctionProblem make_feasibility_problem(
    std::shared_ptr<const SetOracle> C, std::shared_ptr<const SetOracle> D);

}  // namespace apmin
