#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "apmin/prox_solve.hpp"
#include "apmin/scalar_minimize.hpp"
#include "apmin/sets.hpp"

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

double prox1d(const ProxFunction& f, double point, double weight) {
  return f.prox(v1(point), weight).point(0);
}

}  // namespace

TEST_CASE("brute_force_prox reproduces calculus answers") {
  auto square = [](double u) { return u * u; };
  // argmin u^2 + (u-3)^2/2: derivative 2u + (u-3) = 0 -> u = 1.
  CHECK(brute_force_prox(square, 3.0, 1.0, -10, 10, 100000) ==
        doctest::Approx(1.0).epsilon(1e-8));
  auto abs_fn = [](double u) { return std::abs(u); };
  CHECK(brute_force_prox(abs_fn, 0.3, 1.0, -10, 10, 100000) ==
        doctest::Approx(0.0).epsilon(1e-8));
  auto zero_fn = [](double) { return 0.0; };
  CHECK(brute_force_prox(zero_fn, 5.0, 7.0, -10, 10, 100000) ==
        doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("brute_force_prox input validation") {
  auto zero_fn = [](double) { return 0.0; };
  CHECK_THROWS_AS(brute_force_prox(zero_fn, 0, 1, -1, 1, 10), ConfigError);
  auto nowhere = [](double) { return std::numeric_limits<double>::infinity(); };
  CHECK_THROWS_AS(brute_force_prox(nowhere, 0, 1, -1, 1, 2000), Error);
}

TEST_CASE("quadratic prox: scalar and least-squares forms") {
  QuadraticFunction square(1.0, v1(0));  // u^2
  CHECK(prox1d(square, 3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));

  // 1/2||Au - b||^2 must equal its definition everywhere.
  Mat A(3, 2);
  A << 1, 2, 0, 1, -1, 1;
  Vec b(3);
  b << 1, 0, 2;
  auto ls = QuadraticFunction::least_squares(A, b);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(-4, 4);
  for (int i = 0; i < 50; ++i) {
    Vec u = v2(unif(rng), unif(rng));
    CHECK(ls->value(u) ==
          doctest::Approx(0.5 * (A * u - b).squaredNorm()).epsilon(1e-12));
  }
  // Prox solves (A^T A + I/w) u = A^T b + p/w.
  Vec p = v2(0.3, -1.0);
  Vec got = ls->prox(p, 2.0).point;
  Mat H = A.transpose() * A + Mat::Identity(2, 2) / 2.0;
  Vec expect = H.ldlt().solve(A.transpose() * b + p / 2.0);
  CHECK((got - expect).norm() < 1e-12);
}

TEST_CASE("zero quadratic is the identity prox") {
  auto zero = QuadraticFunction::zero(2);
  Vec p = v2(4, -7);
  CHECK((zero->prox(p, 3.0).point - p).norm() == 0.0);
}

TEST_CASE("absolute value prox soft-thresholds") {
  AbsoluteValueFunction abs1(1.0);
  CHECK(prox1d(abs1, 0.3, 1.0) == 0.0);
  CHECK(prox1d(abs1, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(prox1d(abs1, -2.0, 1.0) == doctest::Approx(-1.0).epsilon(1e-15));
  // Vector case with scale and weight combined.
  AbsoluteValueFunction half(0.5);
  Vec got = half.prox(v2(3, -0.2), 2.0).point;  // threshold 1.0
  CHECK(got(0) == doctest::Approx(2.0));
  CHECK(got(1) == 0.0);
}

TEST_CASE("separable sum applies entries coordinatewise") {
  std::vector<std::shared_ptr<const ProxFunction>> entries = {
      std::make_shared<AbsoluteValueFunction>(1.0),
      std::make_shared<QuadraticFunction>(1.0, v1(0))};
  SeparableSumFunction sum(entries);
  Vec got = sum.prox(v2(0.3, 3.0), 1.0).point;
  CHECK(got(0) == 0.0);
  CHECK(got(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sum.value(v2(2, 3)) == doctest::Approx(2.0 + 9.0));
}

TEST_CASE("indicator prox is the projection, any weight") {
  auto line = AffineSet::hyperplane(v2(0, 1), 0.0);
  IndicatorFunction ind(line);
  CHECK((ind.prox(v2(3, 4), 0.25).point - v2(3, 0)).norm() < 1e-14);
  CHECK(ind.value(v2(1, 0)) == 0.0);
  CHECK(std::isinf(ind.value(v2(1, 0.1))));
}

TEST_CASE("generic smooth 1-D prox: double well against the oracle") {
  GenericSmooth1DFunction well(
      [](double u) {
        double w = u * u - 1;
        return w * w;
      },
      [](double u) { return 4.0 * u * (u * u - 1); }, -8.0, 8.0);
  auto well_fn = [](double u) {
    double w = u * u - 1;
    return w * w;
  };
  for (double point : {0.55, -0.3, 2.0, -1.7}) {
    ProxResult r = well.prox(v1(point), 1.0);
    CHECK_FALSE(r.exact);
    double oracle = brute_force_prox(well_fn, point, 1.0, -8, 8, 200000);
    CHECK(r.point(0) == doctest::Approx(oracle).epsilon(1e-6));
    // Polished stationarity.
    auto res = well.first_order_residual(r.point, v1(point), 1.0);
    REQUIRE(res.has_value());
    CHECK(*res <= 1e-12);
  }
}

TEST_CASE("generic smooth 1-D prox: deterministic tie-break to smaller u") {
  // Symmetric double well, centered point, loose anchoring: both wells are
  // global minimizers; the selection must take the negative one.
  GenericSmooth1DFunction well(
      [](double u) {
        double w = u * u - 1;
        return w * w;
      },
      [](double u) { return 4.0 * u * (u * u - 1); }, -8.0, 8.0);
  ProxResult r = well.prox(v1(0.0), 1e6);
  CHECK(r.point(0) == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("generic smooth 1-D prox reports a bracket escape") {
  GenericSmooth1DFunction drift([](double u) { return -u; },
                                [](double) { return -1.0; }, -1.0, 1.0);
  CHECK_THROWS_AS(drift.prox(v1(5.0), 1.0), Error);
}

TEST_CASE("x-subproblem examples") {
  // f = indicator of the vertical line {(1, t)}, Q = 1/2||x-y||^2:
  // midpoint (2, 0) projects to (1, 0).
  Mat A(1, 2);
  A << 1, 0;
  Vec b = v1(1.0);
  auto line = std::make_shared<AffineSet>(A, b);
  BiFunctionProblem feas(std::make_shared<IndicatorFunction>(line),
                         QuadraticFunction::zero(2),
                         std::make_shared<SquaredDistanceCoupling>(), 2, 2,
                         0.0);
  ProxResult x1 = solve_x_subproblem(feas, {v2(4, 0), v2(0, 0)}, 1.0);
  CHECK((x1.point - v2(1, 0)).norm() < 1e-14);

  // f(u) = u^2, Q = 0, lambda = 1, x_k = 3 -> 1 (grid oracle agrees).
  BiFunctionProblem quad(std::make_shared<QuadraticFunction>(1.0, v1(0)),
                         QuadraticFunction::zero(1),
                         std::make_shared<ZeroCoupling>(), 1, 1, 0.0);
  CHECK(solve_x_subproblem(quad, {v1(3), v1(0)}, 1.0).point(0) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // f = 0 (whole space), Q = 0: identity for any weight.
  BiFunctionProblem free(QuadraticFunction::zero(1), QuadraticFunction::zero(1),
                         std::make_shared<ZeroCoupling>(), 1, 1, 0.0);
  CHECK(solve_x_subproblem(free, {v1(2.5), v1(0)}, 3.7).point(0) == 2.5);
}

TEST_CASE("y-subproblem examples") {
  // g = indicator of the y-axis, Q = 1/2||x-y||^2, mu = 1:
  // weighted point ((0,2) + (1,0))/2 = (0.5, 1), projected to (0, 1).
  auto yaxis = AffineSet::hyperplane(v2(1, 0), 0.0);
  BiFunctionProblem feas(QuadraticFunction::zero(2),
                         std::make_shared<IndicatorFunction>(yaxis),
                         std::make_shared<SquaredDistanceCoupling>(), 2, 2,
                         0.0);
  Vec y1 = solve_y_subproblem(feas, v2(1, 0), v2(0, 2), 1.0).point;
  CHECK((y1 - v2(0, 1)).norm() < 1e-14);

  // g = |.|, Q = 0: soft threshold.
  BiFunctionProblem soft(QuadraticFunction::zero(1),
                         std::make_shared<AbsoluteValueFunction>(1.0),
                         std::make_shared<ZeroCoupling>(), 1, 1, 0.0);
  CHECK(solve_y_subproblem(soft, v1(0), v1(0.3), 1.0).point(0) == 0.0);
  CHECK(solve_y_subproblem(soft, v1(0), v1(2.0), 1.0).point(0) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("weighted-average reduction matches the projection formula") {
  // For f = delta_C and Q = 1/2||x-y||^2 the x-update must equal
  // P_C((lambda^-1 x + y)/(lambda^-1 + 1)) exactly.
  auto circle = std::make_shared<Sphere>(v2(0, 0), 1.0);
  BiFunctionProblem feas(std::make_shared<IndicatorFunction>(circle),
                         QuadraticFunction::zero(2),
                         std::make_shared<SquaredDistanceCoupling>(), 2, 2,
                         0.0);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(-2, 2);
  std::uniform_real_distribution<double> wdist(0.2, 9.0);
  for (int i = 0; i < 100; ++i) {
    Vec x = v2(unif(rng), unif(rng));
    Vec y = v2(unif(rng), unif(rng));
    double lambda = wdist(rng);
    Vec got = solve_x_subproblem(feas, {x, y}, lambda).point;
    double inv = 1.0 / lambda;
    Vec expect = circle->project((inv * x + y) / (inv + 1.0));
    CHECK((got - expect).norm() == 0.0);
  }
}

TEST_CASE("no exact solver for custom couplings, with the pairing list") {
  auto q = std::make_shared<CustomCoupling>(
      [](const Vec& x, const Vec& y) { return std::sin(x(0) * y(0)); },
      [](const Vec& x, const Vec& y) {
        return Vec(v1(y(0) * std::cos(x(0) * y(0))));
      },
      [](const Vec& x, const Vec& y) {
        return Vec(v1(x(0) * std::cos(x(0) * y(0))));
      },
      [](double) { return 1.0; });
  BiFunctionProblem p(QuadraticFunction::zero(1), QuadraticFunction::zero(1),
                      q, 1, 1, -10.0);
  try {
    solve_x_subproblem(p, {v1(0), v1(0)}, 1.0);
    FAIL("expected NoExactSolverError");
  } catch (const NoExactSolverError& e) {
    std::string msg = e.what();
    CHECK(msg.find("SquaredDistance") != std::string::npos);
    CHECK(msg.find("Bilinear") != std::string::npos);
  }
}

TEST_CASE("oracle agreement: closed forms vs brute force on random draws") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> pdist(-5.0, 5.0);
  std::uniform_real_distribution<double> wdist(0.1, 5.0);
  AbsoluteValueFunction abs_fn(1.3);
  QuadraticFunction quad(0.8, v1(0.5));
  for (int i = 0; i < 60; ++i) {
    double p = pdist(rng), w = wdist(rng);
    CHECK(prox1d(abs_fn, p, w) ==
          doctest::Approx(brute_force_prox(
                              [](double u) { return 1.3 * std::abs(u); }, p, w,
                              -20, 20, 100000))
              .epsilon(1e-6));
    CHECK(prox1d(quad, p, w) ==
          doctest::Approx(brute_force_prox(
                              [](double u) {
                                return 0.8 * (u - 0.5) * (u - 0.5);
                              },
                              p, w, -20, 20, 100000))
              .epsilon(1e-6));
  }
}

TEST_CASE("first-order optimality residual of every closed-form prox") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pdist(-5.0, 5.0);
  std::uniform_real_distribution<double> wdist(0.1, 8.0);

  AbsoluteValueFunction abs_fn(0.7);
  QuadraticFunction quad(1.4, v1(-1.0));
  auto line = AffineSet::hyperplane(v2(1, 2), 3.0);
  IndicatorFunction ind(line);

  for (int i = 0; i < 120; ++i) {
    double w = wdist(rng);
    Vec p1 = v1(pdist(rng));
    Vec p2 = v2(pdist(rng), pdist(rng));

    auto r_abs = abs_fn.first_order_residual(abs_fn.prox(p1, w).point, p1, w);
    REQUIRE(r_abs.has_value());
    CHECK(*r_abs <= 1e-10);

    auto r_quad = quad.first_order_residual(quad.prox(p1, w).point, p1, w);
    REQUIRE(r_quad.has_value());
    CHECK(*r_quad <= 1e-10);

    auto r_ind = ind.first_order_residual(ind.prox(p2, w).point, p2, w);
    REQUIRE(r_ind.has_value());
    CHECK(*r_ind <= 1e-10);
  }
}
