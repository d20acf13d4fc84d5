#pragma once

#include "apmin/problem.hpp"

namespace apmin {

/// Exact global minimizer of u -> L(u, y_k) + (1/2 lambda)||u - x_k||^2.
///
/// Supported pairings: any catalog prox function combined with a coupling
/// that is an isotropic quadratic (or linear) in the active block, i.e.
/// Q in {Zero, SquaredDistance, Bilinear}. The coupling part folds into the
/// prox target, so for Q = 1/2||x-y||^2 and f an indicator this is exactly
/// the averaged projection P_C((lambda^-1 x_k + y_k)/(lambda^-1 + 1)).
/// Anything else throws NoExactSolverError.
ProxResult solve_x_subproblem(const BiFunctionProblem& problem,
                              const ProductPoint& z_k, double lambda_k);

/// Mirror of solve_x_subproblem for v -> L(x_next, v) + (1/2 mu)||v - y_k||^2.
/// Takes x_next (not x_k): the sweep order is x first, then y.
ProxResult solve_y_subproblem(const BiFunctionProblem& problem,
                              const Vec& x_next, const Vec& y_k, double mu_k);

}  // namespace apmin
