#include "apmin/prox_solve.hpp"

#include "apmin/errors.hpp"

namespace apmin {

namespace {

[[noreturn]] void throw_unsupported(const BiFunctionProblem& problem,
                                    const char* block) {
  throw NoExactSolverError(
      std::string("no exact solver for the ") + block +
      "-subproblem: coupling kind '" + problem.q().kind_name() +
      "' has no block reduction. Supported pairings: any of "
      "{IndicatorSet, AbsoluteValue, Quadratic, SeparableSum, "
      "GenericSmooth1D} with a coupling in {Zero, SquaredDistance, "
      "Bilinear}.");
}

}  // namespace

ProxResult solve_x_subproblem(const BiFunctionProblem& problem,
                              const ProductPoint& z_k, double lambda_k) {
  if (z_k.n() != problem.n() || z_k.m() != problem.m()) {
    throw ConfigError("solve_x_subproblem: dimension mismatch");
  }
  auto target = problem.q().reduce_x(z_k.x, z_k.y, lambda_k);
  if (!target) throw_unsupported(problem, "x");
  try {
    return problem.f().prox(target->point, target->weight);
  } catch (const NoExactSolverError&) {
    throw;
  } catch (const Error& e) {
    throw SubSolverError("x", e.what());
  }
}

ProxResult solve_y_subproblem(const BiFunctionProblem& problem,
                              const Vec& x_next, const Vec& y_k, double mu_k) {
  if (x_next.size() != problem.n() || y_k.size() != problem.m()) {
    throw ConfigError("solve_y_subproblem: dimension mismatch");
  }
  auto target = problem.q().reduce_y(x_next, y_k, mu_k);
  if (!target) throw_unsupported(problem, "y");
  try {
    return problem.g().prox(target->point, target->weight);
  } catch (const NoExactSolverError&) {
    throw;
  } catch (const Error& e) {
    throw SubSolverError("y", e.what());
  }
}

}  // namespace apmin
