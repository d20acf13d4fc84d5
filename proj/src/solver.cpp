#include "apmin/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "apmin/errors.hpp"
#include "apmin/prox_solve.hpp"

namespace apmin {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDescentSlack = 1e-10;  // relative
}  // namespace

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged:
      return "Converged";
    case RunStatus::MaxIterations:
      return "MaxIterations";
    case RunStatus::Stationary:
      return "Stationary";
    case RunStatus::SubSolverFailure:
      return "SubSolverFailure";
  }
  return "Unknown";
}

void StopCriteria::validate() const {
  if (max_iterations < 1) throw ConfigError("StopCriteria: max_iterations < 1");
  if (!(step_tol > 0.0)) throw ConfigError("StopCriteria: step_tol <= 0");
  if (!(residual_tol > 0.0)) throw ConfigError("StopCriteria: residual_tol <= 0");
}

StepOutcome step(const BiFunctionProblem& problem, const ProductPoint& z_k,
                 long k, double lambda_k, double mu_k) {
  ProxResult xr = solve_x_subproblem(problem, z_k, lambda_k);
  ProxResult yr = solve_y_subproblem(problem, xr.point, z_k.y, mu_k);
  ProductPoint z_next(xr.point, yr.point);

  IterateRecord rec{
      k + 1,
      z_next,
      ExtReal(eval_L(problem, z_next)),
      (z_next.x - z_k.x).norm(),
      (z_next.y - z_k.y).norm(),
      residual_vector(problem, z_k, z_next, lambda_k, mu_k).norm(),
      lambda_k,
      mu_k,
      !(xr.exact && yr.exact)};
  return {std::move(z_next), std::move(rec)};
}

bool detect_stationarity(const IterateRecord& record, double tol) {
  return record.step_x <= tol && record.step_y <= tol;
}

Trajectory run(const BiFunctionProblem& problem, const ProductPoint& z0,
               const StepSchedule& schedule, const StopCriteria& stop,
               long record_stride) {
  schedule.validate();
  stop.validate();
  if (record_stride < 1) throw ConfigError("run: record_stride must be >= 1");
  if (z0.n() != problem.n() || z0.m() != problem.m()) {
    throw ConfigError("run: starting point dimensions do not match");
  }

  const auto t0 = std::chrono::steady_clock::now();
  Trajectory traj{
      {}, RunStatus::MaxIterations, z0, 0, 0.0, {}};

  double value0 = eval_L(problem, z0);
  if (value0 == kInf) {
    traj.warnings.push_back(
        "L(z0) is not finite; the first sweep drops the constant "
        "block terms (values become finite after one full step)");
  }
  traj.records.push_back(IterateRecord{0, z0, ExtReal(value0), 0.0, 0.0, kInf,
                                       schedule.lambda_at(0),
                                       schedule.mu_at(0), false});

  ProductPoint z = z0;
  double prev_value = value0;
  std::optional<IterateRecord> pending;  // newest record not yet stored
  for (long k = 0; k < stop.max_iterations; ++k) {
    double lambda_k = schedule.lambda_at(k);
    double mu_k = schedule.mu_at(k);

    std::optional<StepOutcome> maybe_out;
    try {
      maybe_out.emplace(step(problem, z, k, lambda_k, mu_k));
    } catch (const SubSolverError& e) {
      traj.warnings.push_back(e.what());
      traj.status = RunStatus::SubSolverFailure;
      if (pending) traj.records.push_back(*pending);
      break;
    }
    StepOutcome& out = *maybe_out;

    if (out.z_next.value_equal(z)) {
      // A two-block fixed point: V = 0, so z is critical. Nothing moved;
      // make sure the current state is stored, then mark it.
      if (pending) traj.records.push_back(*pending);
      traj.records.back().residual_norm = 0.0;
      traj.status = RunStatus::Stationary;
      break;
    }

    const IterateRecord& rec = out.record;
    double decrease = rec.step_x * rec.step_x / (2.0 * lambda_k) +
                      rec.step_y * rec.step_y / (2.0 * mu_k);
    double slack = kDescentSlack * std::max(1.0, std::abs(prev_value));
    if (std::isfinite(prev_value) &&
        rec.value.as_double() > prev_value - decrease + slack) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "L went from " << prev_value << " to " << rec.value.as_double()
          << " but the step norms demand a decrease of at least " << decrease;
      throw DescentViolationError(k, msg.str());
    }

    traj.iterations = k + 1;
    if (record_stride == 1 || rec.k % record_stride == 0) {
      traj.records.push_back(rec);
      pending.reset();
    } else {
      pending = rec;
    }

    z = out.z_next;
    prev_value = rec.value.as_double();

    if (detect_stationarity(rec, stop.step_tol) &&
        rec.residual_norm <= stop.residual_tol) {
      traj.status = RunStatus::Converged;
      if (pending) traj.records.push_back(*pending);
      break;
    }
    if (k + 1 == stop.max_iterations && pending) {
      traj.records.push_back(*pending);
    }
  }

  traj.limit = z;
  traj.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return traj;
}

}  // namespace apmin
