#include "apmin/zoo.hpp"

#include <cmath>
#include <sstream>

#include "apmin/errors.hpp"

namespace apmin {

std::string to_string(Family family) {
  switch (family) {
    case Family::Feasibility:
      return "Feasibility";
    case Family::LeastSquaresCoupled:
      return "LeastSquaresCoupled";
    case Family::SoftThresholdDecoupled:
      return "SoftThresholdDecoupled";
    case Family::MorseCoupled:
      return "MorseCoupled";
    case Family::UniformlyConvex:
      return "UniformlyConvex";
    case Family::MetricRegular:
      return "MetricRegular";
  }
  return "Unknown";
}

BiFunctionProblem make_feasibility_problem(
    std::shared_ptr<const SetOracle> C, std::shared_ptr<const SetOracle> D) {
  if (!C || !D) throw ConfigError("feasibility problem: null set");
  if (C->dimension() != D->dimension()) {
    throw ConfigError("feasibility problem: sets live in different spaces");
  }
  Eigen::Index n = C->dimension();
  return BiFunctionProblem(std::make_shared<IndicatorFunction>(C),
                           std::make_shared<IndicatorFunction>(D),
                           std::make_shared<SquaredDistanceCoupling>(), n, n,
                           /*lower_bound=*/0.0);
}

namespace {

Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

const std::vector<RegistryEntry>& registry_entries() {
  static const std::vector<RegistryEntry> entries = {
      {"lines-transverse", "Z1", Family::Feasibility,
       "two transverse lines in R^2 (the coordinate axes); unique critical "
       "pair at the origin, linear rate",
       {}},
      {"lines-parallel", "Z2", Family::Feasibility,
       "two parallel horizontal lines at vertical distance d; empty "
       "intersection, critical pairs are vertically aligned",
       {{"d", 1.0}}},
      {"circle-secant", "Z3", Family::Feasibility,
       "unit circle and the secant line y = offset (|offset| < 1); "
       "transverse intersection, linear rate",
       {{"offset", 0.0}}},
      {"circle-tangent", "Z4", Family::Feasibility,
       "unit circle and its tangent line y = 1; tangential intersection, "
       "sublinear rate",
       {}},
      {"circles-tangent", "Z5", Family::Feasibility,
       "two externally tangent circles of radius r touching at the origin",
       {{"r", 1.0}}},
      {"parabola-axis", "Z6", Family::Feasibility,
       "the parabola {(t, t^2)} and the x-axis, tangent at the origin",
       {}},
      {"least-squares", "Z7", Family::LeastSquaresCoupled,
       "f = 1/2||Ax-b||^2, g = 1/2||Cy-d||^2 coupled by 1/2||x-y||^2 "
       "(A = diag(a1,a2), C = row (c1,c2))",
       {{"a1", 1.0}, {"a2", 2.0}, {"b1", 1.0}, {"b2", 2.0},
        {"c1", 1.0}, {"c2", -1.0}, {"d1", 0.0}}},
      {"soft-threshold", "Z8", Family::SoftThresholdDecoupled,
       "f = scale*|x|, g = scale*|y|, no coupling; finite termination",
       {{"scale", 1.0}}},
      {"double-well", "Z9", Family::MorseCoupled,
       "f = (x^2-1)^2, g = (y^2-1)^2, Q = kappa*x*y with kappa in [0, 0.1]; "
       "1-D numeric sub-solves (inexact-tagged)",
       {{"kappa", 0.1}}},
      {"segments-line", "Z10", Family::Feasibility,
       "union of two horizontal segments at height 1 against the x-axis; "
       "nonconvex feasibility without normal-cone oracles",
       {}},
      {"uconvex-quadratic", "UC1", Family::UniformlyConvex,
       "f = a*x^2, g = b*y^2 coupled by 1/2(x-y)^2; uniformly convex with "
       "minimum at the origin",
       {{"a", 1.0}, {"b", 1.0}}},
      {"metric-regular", "MR1", Family::MetricRegular,
       "f = 1/2(x1+x2-1)^2 (wide least squares, continuum of minimizers), "
       "g = 0, coupled by 1/2||x-y||^2",
       {}},
  };
  return entries;
}

double get_param(const std::map<std::string, double>& params,
                 const std::map<std::string, double>& defaults,
                 const std::string& key) {
  auto it = params.find(key);
  if (it != params.end()) return it->second;
  return defaults.at(key);
}

void reject_unknown_params(const std::map<std::string, double>& params,
                           const std::map<std::string, double>& defaults,
                           const std::string& name) {
  for (const auto& [key, unused] : params) {
    (void)unused;
    if (defaults.find(key) == defaults.end()) {
      std::ostringstream msg;
      msg << "problem '" << name << "' does not take a parameter '" << key
          << "';";
      if (defaults.empty()) {
        msg << " it has no parameters";
      } else {
        msg << " known parameters:";
        for (const auto& [k, v] : defaults) msg << " " << k;
      }
      throw ConfigError(msg.str());
    }
  }
}

struct FeasibilitySets {
  std::shared_ptr<const SetOracle> C;
  std::shared_ptr<const SetOracle> D;
};

FeasibilitySets make_sets(const RegistryEntry& entry,
                          const std::map<std::string, double>& params) {
  const std::string& id = entry.alias;
  if (id == "Z1") {
    return {AffineSet::hyperplane(make_vec({0, 1}), 0.0),   // x-axis
            AffineSet::hyperplane(make_vec({1, 0}), 0.0)};  // y-axis
  }
  if (id == "Z2") {
    double d = get_param(params, entry.default_parameters, "d");
    if (!(d > 0.0)) throw ConfigError("lines-parallel: d must be > 0");
    return {AffineSet::hyperplane(make_vec({0, 1}), 0.0),
            AffineSet::hyperplane(make_vec({0, 1}), d)};
  }
  if (id == "Z3") {
    double offset = get_param(params, entry.default_parameters, "offset");
    if (!(std::abs(offset) < 1.0)) {
      throw ConfigError("circle-secant: need |offset| < 1 for a secant");
    }
    return {std::make_shared<Sphere>(make_vec({0, 0}), 1.0),
            AffineSet::hyperplane(make_vec({0, 1}), offset)};
  }
  if (id == "Z4") {
    return {std::make_shared<Sphere>(make_vec({0, 0}), 1.0),
            AffineSet::hyperplane(make_vec({0, 1}), 1.0)};
  }
  if (id == "Z5") {
    double r = get_param(params, entry.default_parameters, "r");
    if (!(r > 0.0)) throw ConfigError("circles-tangent: r must be > 0");
    return {std::make_shared<Sphere>(make_vec({-r, 0}), r),
            std::make_shared<Sphere>(make_vec({r, 0}), r)};
  }
  if (id == "Z6") {
    return {std::make_shared<ParabolaCurve>(),
            AffineSet::hyperplane(make_vec({0, 1}), 0.0)};
  }
  if (id == "Z10") {
    std::vector<std::shared_ptr<const SetOracle>> pieces = {
        std::make_shared<Segment>(make_vec({-2, 1}), make_vec({-1, 1})),
        std::make_shared<Segment>(make_vec({1, 1}), make_vec({2, 1}))};
    return {std::make_shared<UnionSet>(pieces),
            AffineSet::hyperplane(make_vec({0, 1}), 0.0)};
  }
  throw ConfigError("internal: no set construction for " + id);
}

ProductPoint default_start(const std::string& alias) {
  if (alias == "Z1") return {make_vec({1, 0}), make_vec({0, 1})};
  if (alias == "Z2") return {make_vec({0, 0}), make_vec({3, 1})};
  if (alias == "Z3") return {make_vec({0.8, 0.45}), make_vec({0.8, 0.45})};
  if (alias == "Z4") return {make_vec({0.45, 1.2}), make_vec({0.45, 1.2})};
  if (alias == "Z5") return {make_vec({-0.2, 0.5}), make_vec({0.2, 0.5})};
  if (alias == "Z6") return {make_vec({0.5, 0.25}), make_vec({0.7, 0.0})};
  if (alias == "Z7") return {make_vec({0, 0}), make_vec({0, 0})};
  if (alias == "Z8") return {make_vec({5.5}), make_vec({0.3})};
  if (alias == "Z9") return {make_vec({0.5}), make_vec({-0.5})};
  if (alias == "Z10") return {make_vec({-1.5, 2}), make_vec({0, 0})};
  if (alias == "UC1") return {make_vec({3}), make_vec({-2})};
  if (alias == "MR1") return {make_vec({2, -1}), make_vec({0, 0})};
  throw ConfigError("internal: no default start for " + alias);
}

StopCriteria default_stop(const std::string& alias) {
  if (alias == "Z1") return {200, 1e-13, 1e-12};
  if (alias == "Z8") return {100, 1e-12, 1e-10};
  if (alias == "Z9") return {5000, 1e-10, 1e-9};
  if (alias == "Z4" || alias == "Z5" || alias == "Z6") {
    return {10000, 1e-12, 1e-10};  // tangential: expect MaxIterations
  }
  return {2000, 1e-12, 1e-10};
}

}  // namespace

const std::vector<RegistryEntry>& registry() { return registry_entries(); }

const RegistryEntry& registry_lookup(const std::string& name) {
  for (const auto& entry : registry_entries()) {
    if (entry.name == name || entry.alias == name) return entry;
  }
  std::ostringstream msg;
  msg << "unknown problem '" << name << "'; the registry contains:";
  for (const auto& entry : registry_entries()) {
    msg << "\n  " << entry.alias << "  " << entry.name;
  }
  throw ConfigError(msg.str());
}

ProblemSpec default_spec(const std::string& name) {
  const RegistryEntry& entry = registry_lookup(name);
  return ProblemSpec{entry.name,
                     entry.family,
                     entry.default_parameters,
                     default_start(entry.alias),
                     StepSchedule::constant(1.0, 1.0),
                     default_stop(entry.alias)};
}

BuiltProblem build_problem(const ProblemSpec& spec) {
  const RegistryEntry& entry = registry_lookup(spec.name);
  reject_unknown_params(spec.parameters, entry.default_parameters, entry.name);
  const auto& defaults = entry.default_parameters;
  auto param = [&](const std::string& key) {
    return get_param(spec.parameters, defaults, key);
  };

  const std::string& id = entry.alias;
  if (entry.family == Family::Feasibility) {
    FeasibilitySets sets = make_sets(entry, spec.parameters);
    return {make_feasibility_problem(sets.C, sets.D), sets.C, sets.D,
            entry.description};
  }
  if (id == "Z7") {
    Mat A = Mat::Zero(2, 2);
    A(0, 0) = param("a1");
    A(1, 1) = param("a2");
    Vec b = make_vec({param("b1"), param("b2")});
    Mat Cm(1, 2);
    Cm << param("c1"), param("c2");
    Vec d = make_vec({param("d1")});
    return {BiFunctionProblem(QuadraticFunction::least_squares(A, b),
                              QuadraticFunction::least_squares(Cm, d),
                              std::make_shared<SquaredDistanceCoupling>(), 2,
                              2, 0.0),
            nullptr, nullptr, entry.description};
  }
  if (id == "Z8") {
    double scale = param("scale");
    if (!(scale > 0.0)) throw ConfigError("soft-threshold: scale must be > 0");
    return {BiFunctionProblem(
                std::make_shared<AbsoluteValueFunction>(scale),
                std::make_shared<AbsoluteValueFunction>(scale),
                std::make_shared<ZeroCoupling>(), 1, 1, 0.0),
            nullptr, nullptr, entry.description};
  }
  if (id == "Z9") {
    double kappa = param("kappa");
    if (!(kappa >= 0.0 && kappa <= 0.1)) {
      throw ConfigError("double-well: kappa must lie in [0, 0.1]");
    }
    auto well = [] {
      return std::make_shared<GenericSmooth1DFunction>(
          [](double u) {
            double w = u * u - 1.0;
            return w * w;
          },
          [](double u) { return 4.0 * u * (u * u - 1.0); }, -8.0, 8.0);
    };
    // |xy| <= (x^2+y^2)/2 gives L >= 2 min_t[(t-1)^2 - (kappa/2) t]
    //                              = -kappa - kappa^2/8.
    double lower = -kappa - kappa * kappa / 8.0;
    return {BiFunctionProblem(well(), well(),
                              std::make_shared<BilinearCoupling>(kappa), 1, 1,
                              lower),
            nullptr, nullptr, entry.description};
  }
  if (id == "UC1") {
    double a = param("a");
    double b = param("b");
    if (!(a > 0.0 && b > 0.0)) {
      throw ConfigError("uconvex-quadratic: curvatures must be > 0");
    }
    return {BiFunctionProblem(
                std::make_shared<QuadraticFunction>(a, make_vec({0})),
                std::make_shared<QuadraticFunction>(b, make_vec({0})),
                std::make_shared<SquaredDistanceCoupling>(), 1, 1, 0.0),
            nullptr, nullptr, entry.description};
  }
  if (id == "MR1") {
    Mat A(1, 2);
    A << 1.0, 1.0;
    Vec b = make_vec({1.0});
    return {BiFunctionProblem(QuadraticFunction::least_squares(A, b),
                              QuadraticFunction::zero(2),
                              std::make_shared<SquaredDistanceCoupling>(), 2,
                              2, 0.0),
            nullptr, nullptr, entry.description};
  }
  throw ConfigError("internal: unhandled registry id " + id);
}

}  // namespace apmin
