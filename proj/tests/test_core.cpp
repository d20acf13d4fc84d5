#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "apmin/problem.hpp"
#include "apmin/prox_solve.hpp"
#include "apmin/sets.hpp"
#include "apmin/solver.hpp"
#include "apmin/zoo.hpp"

using namespace apmin;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}
Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

BiFunctionProblem axes_problem() {
  return make_feasibility_problem(AffineSet::hyperplane(v2(0, 1), 0.0),
                                  AffineSet::hyperplane(v2(1, 0), 0.0));
}

BiFunctionProblem quadratic_1d() {
  // f(x) = x^2, g(y) = y^2, Q = 0.
  return BiFunctionProblem(std::make_shared<QuadraticFunction>(1.0, v1(0)),
                           std::make_shared<QuadraticFunction>(1.0, v1(0)),
                           std::make_shared<ZeroCoupling>(), 1, 1, 0.0);
}

BiFunctionProblem coupled_1d(double kappa = 0.0) {
  // f = g = 0, Q = 1/2 (x-y)^2 or kappa x y.
  std::shared_ptr<const Coupling> q;
  if (kappa == 0.0) {
    q = std::make_shared<SquaredDistanceCoupling>();
  } else {
    q = std::make_shared<BilinearCoupling>(kappa);
  }
  return BiFunctionProblem(QuadraticFunction::zero(1),
                           QuadraticFunction::zero(1), q, 1, 1, -100.0);
}

}  // namespace

TEST_CASE("eval_L on the feasibility bifunction") {
  BiFunctionProblem p = axes_problem();
  // x on C, y on D: only the coupling contributes.
  CHECK(eval_L(p, {v2(1, 0), v2(0, 0)}) == doctest::Approx(0.5).epsilon(1e-14));
  // x off C: indicator value.
  CHECK(std::isinf(eval_L(p, {v2(1, 1), v2(0, 0)})));
  CHECK(eval_L(p, {v2(1, 1), v2(0, 0)}) > 0);
}

TEST_CASE("eval_L sums decoupled squares") {
  BiFunctionProblem p = quadratic_1d();
  CHECK(eval_L(p, {v1(3), v1(4)}) == doctest::Approx(25.0).epsilon(1e-15));
}

TEST_CASE("eval_L rejects mismatched dimensions") {
  BiFunctionProblem p = axes_problem();
  CHECK_THROWS_AS(eval_L(p, ProductPoint(v1(1), v2(0, 0))), ConfigError);
}

TEST_CASE("residual_vector with no coupling is the scaled step") {
  BiFunctionProblem p = quadratic_1d();
  Vec v = residual_vector(p, {v1(3), v1(2)}, {v1(1), v1(0.5)}, 1.0, 1.0);
  CHECK(v(0) == doctest::Approx(2.0));
  CHECK(v(1) == doctest::Approx(1.5));
}

TEST_CASE("residual_vector vanishes on a stationary step") {
  BiFunctionProblem p = coupled_1d();
  ProductPoint z{v1(0.7), v1(0.7)};
  Vec v = residual_vector(p, z, z, 0.5, 2.0);
  CHECK(v.norm() == 0.0);
}

TEST_CASE("residual_vector matches hand evaluation for the coupled step") {
  // Q = 1/2(x-y)^2, lambda = mu = 1, x: 2 -> 1, y: 0 -> 0.5.
  // x-part: (2-1)/1 + grad_x Q(1, 0.5) - grad_x Q(1, 0) = 1 + 0.5 - 1 = 0.5
  // y-part: (0 - 0.5)/1 = -0.5.
  BiFunctionProblem p = coupled_1d();
  Vec v = residual_vector(p, {v1(2), v1(0)}, {v1(1), v1(0.5)}, 1.0, 1.0);
  CHECK(v(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(v(1) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(v.norm() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("check_gradient is exact on quadratic and bilinear couplings") {
  CHECK(check_gradient(coupled_1d(), {v1(1.3), v1(-0.4)}, 1e-5) < 1e-6);
  CHECK(check_gradient(quadratic_1d(), {v1(1.0), v1(2.0)}, 1e-5) == 0.0);
  CHECK(check_gradient(coupled_1d(0.1), {v1(1), v1(2)}, 1e-5) < 1e-6);
}

TEST_CASE("check_gradient catches on a smooth custom coupling") {
  auto q = std::make_shared<CustomCoupling>(
      [](const Vec& x, const Vec& y) { return std::sin(x(0)) * std::cos(y(0)); },
      [](const Vec& x, const Vec& y) {
        return Vec(v1(std::cos(x(0)) * std::cos(y(0))));
      },
      [](const Vec& x, const Vec& y) {
        return Vec(v1(-std::sin(x(0)) * std::sin(y(0))));
      },
      [](double) { return 1.0; });
  BiFunctionProblem p(QuadraticFunction::zero(1), QuadraticFunction::zero(1),
                      q, 1, 1, -10.0);
  CHECK(check_gradient(p, {v1(0.3), v1(0.8)}, 1e-5) < 1e-6);

  // A deliberately wrong gradient must be flagged.
  auto bad = std::make_shared<CustomCoupling>(
      [](const Vec& x, const Vec& y) { return std::sin(x(0)) * std::cos(y(0)); },
      [](const Vec&, const Vec&) { return Vec(v1(1.0)); },
      [](const Vec&, const Vec&) { return Vec(v1(0.0)); },
      [](double) { return 1.0; });
  BiFunctionProblem pb(QuadraticFunction::zero(1), QuadraticFunction::zero(1),
                       bad, 1, 1, -10.0);
  CHECK(check_gradient(pb, {v1(0.3), v1(0.8)}, 1e-5) > 1e-2);
}

TEST_CASE("residual bound: ||V||^2 <= rho * step^2 along real steps") {
  // Step-to-residual inequality with the analytic cross-block constant.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (const char* id : {"Z1", "Z7", "UC1"}) {
    ProblemSpec spec = default_spec(id);
    BuiltProblem built = build_problem(spec);
    ResidualBoundParams params(spec.schedule.r_minus,
                               built.problem.q_lipschitz(10.0));
    for (int trial = 0; trial < 20; ++trial) {
      Vec x(built.problem.n()), y(built.problem.m());
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = unif(rng);
      for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = unif(rng);
      ProductPoint z(x, y);
      StepOutcome out = step(built.problem, z, 0, 1.0, 1.0);
      double step_sq = out.record.step_x * out.record.step_x +
                       out.record.step_y * out.record.step_y;
      double res_sq = out.record.residual_norm * out.record.residual_norm;
      CHECK(res_sq <= params.rho * step_sq + 1e-12);
    }
  }
}

TEST_CASE("ResidualBoundParams pins rho = max(2/r-^2, 2C^2 + 1/r-^2)") {
  ResidualBoundParams small_c(0.1, 1.0);
  CHECK(small_c.rho == doctest::Approx(200.0));
  ResidualBoundParams big_c(1.0, 10.0);
  CHECK(big_c.rho == doctest::Approx(201.0));
  CHECK(big_c.rho >= 2.0);  // rho >= 2/r-^2 always
  CHECK_THROWS_AS(ResidualBoundParams(0.0, 1.0), ConfigError);
}

TEST_CASE("StepSchedule enforces the open weight interval") {
  CHECK_THROWS_AS(StepSchedule::constant(0.05, 1.0), ConfigError);  // <= r-
  CHECK_THROWS_AS(StepSchedule::constant(1.0, 10.0), ConfigError);  // >= r+
  StepSchedule tabled;
  tabled.lambda = std::vector<double>{1.0, 2.0, 5.0};
  tabled.mu = 0.5;
  tabled.validate();
  CHECK(tabled.lambda_at(0) == 1.0);
  CHECK(tabled.lambda_at(2) == 5.0);
  CHECK(tabled.lambda_at(99) == 5.0);  // last entry repeats
  tabled.lambda = std::vector<double>{1.0, 0.01};
  CHECK_THROWS_AS(tabled.validate(), ConfigError);
}

TEST_CASE("ProductPoint rejects non-finite components") {
  CHECK_THROWS_AS(ProductPoint(v1(std::nan("")), v1(0)), ConfigError);
  CHECK_THROWS_AS(
      ProductPoint(v1(0), v1(std::numeric_limits<double>::infinity())),
      ConfigError);
}

TEST_CASE("problem construction validates properness and the lower bound") {
  CHECK_THROWS_AS(BiFunctionProblem(
                      std::make_shared<QuadraticFunction>(1.0, v1(0)),
                      std::make_shared<QuadraticFunction>(1.0, v1(0)),
                      std::make_shared<ZeroCoupling>(), 1, 1,
                      -std::numeric_limits<double>::infinity()),
                  ConfigError);
  // Dimension contradiction between f and n.
  CHECK_THROWS_AS(BiFunctionProblem(
                      std::make_shared<QuadraticFunction>(1.0, v2(0, 0)),
                      std::make_shared<QuadraticFunction>(1.0, v1(0)),
                      std::make_shared<ZeroCoupling>(), 1, 1, 0.0),
                  ConfigError);
}

TEST_CASE("sampled values respect the certified lower bound (H1 spot check)") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(-2.5, 2.5);
  for (const auto& entry : registry()) {
    ProblemSpec spec = default_spec(entry.alias);
    BuiltProblem built = build_problem(spec);
    for (int i = 0; i < 200; ++i) {
      Vec x(built.problem.n()), y(built.problem.m());
      for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = unif(rng);
      for (Eigen::Index j = 0; j < y.size(); ++j) y(j) = unif(rng);
      double L = eval_L(built.problem, ProductPoint(x, y));
      CHECK(L >= built.problem.lower_bound() - 1e-12);
    }
  }
}

TEST_CASE("values are continuous along in-domain sequences (H3 spot check)") {
  // Lower semicontinuity where it is checkable: on the domain the
  // feasibility value is plain 1/2||x-y||^2, continuous along any
  // convergent in-domain sequence; off-domain values are +inf and dominate.
  BuiltProblem built = build_problem(default_spec("Z1"));
  ProductPoint zbar{v2(2, 0), v2(0, 1)};
  double L_bar = eval_L(built.problem, zbar);
  for (int j = 1; j <= 12; ++j) {
    double t = std::pow(2.0, -j);
    ProductPoint zj{v2(2 + t, 0), v2(0, 1 - t)};
    CHECK(std::abs(eval_L(built.problem, zj) - L_bar) < 10 * t);
  }
  CHECK(std::isinf(eval_L(built.problem, {v2(2, 0.5), v2(0, 1)})));
}
