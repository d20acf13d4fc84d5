#pragma once

#include <string>
#include <vector>

#include "apmin/extended_real.hpp"
#include "apmin/problem.hpp"

namespace apmin {

/// One stored iterate. Record k holds the state z_k together with the data
/// of the transition that produced it: step norms ||x_k - x_{k-1}||,
/// ||y_k - y_{k-1}||, the witness norm ||V_k|| with V_k in dL(z_k), and the
/// weights used. The initial record (k = 0) has zero steps and an unknown
/// (+inf) residual; it becomes 0 if the first step turns out stationary.
struct IterateRecord {
  long k;
  ProductPoint z;
  ExtReal value;         // L(z_k)
  double step_x;
  double step_y;
  double residual_norm;  // ||V_k||
  double lambda;
  double mu;
  bool inexact;          // an inexact 1-D search was involved
};

enum class RunStatus { Converged, MaxIterations, Stationary, SubSolverFailure };

std::string to_string(RunStatus status);

struct Trajectory {
  std::vector<IterateRecord> records;
  RunStatus status = RunStatus::MaxIterations;
  ProductPoint limit;          // final iterate
  long iterations = 0;         // executed steps
  double elapsed_seconds = 0.0;
  std::vector<std::string> warnings;
};

struct StopCriteria {
  long max_iterations = 10000;
  double step_tol = 1e-10;
  double residual_tol = 1e-8;

  void validate() const;
};

struct StepOutcome {
  ProductPoint z_next;
  IterateRecord record;
};

/// One full alternating sweep from z_k: the x-block is updated against y_k,
/// then the y-block against the fresh x. The returned record describes the
/// arrival state z_{k+1} (its k field is k+1).
StepOutcome step(const BiFunctionProblem& problem, const ProductPoint& z_k,
                 long k, double lambda_k, double mu_k);

/// True when both step norms are within tol. A two-block fixed point
/// satisfies the stationarity conditions of both subproblems exactly, so
/// zero steps certify 0 in dL(z).
bool detect_stationarity(const IterateRecord& record, double tol);

/// Iterate until both step norms are <= step_tol and the residual norm is
/// <= residual_tol, or the budget runs out. Every consecutive record pair is
/// checked against the sufficient-decrease inequality
///   L(z_{k+1}) <= L(z_k) - (1/2 lambda_k)||dx||^2 - (1/2 mu_k)||dy||^2
/// with 1e-10 relative slack; a violation throws DescentViolationError
/// (an exact sub-solver cannot violate it). A bit-exact fixed step ends the
/// run with status Stationary. Sub-solver failures end the run with status
/// SubSolverFailure and a warning entry.
///
/// record_stride > 1 thins storage (every stride-th record plus the first
/// and last); the descent and stopping checks always run on the full
/// sequence.
Trajectory run(const BiFunctionProblem& problem, const ProductPoint& z0,
               const StepSchedule& schedule, const StopCriteria& stop,
               long record_stride = 1);

}  // namespace apmin
