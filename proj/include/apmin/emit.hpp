#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "apmin/diagnostics.hpp"
#include "apmin/set_oracle.hpp"
#include "apmin/solver.hpp"

namespace apmin {

/// Shortest decimal that parses back to the exact double (at most 17
/// significant digits); infinities render as "inf"/"-inf".
std::string format_double(double v);

/// Write `k,L,step_x,step_y,residual,lambda,mu,inexact` plus one row per
/// record. Numeric columns round-trip exactly.
void emit_csv(const Trajectory& traj, const std::string& path);

/// One parsed CSV row (same fields as the emitted columns).
struct CsvRow {
  long k;
  double L;  // IEEE inf for the "inf" literal
  double step_x;
  double step_y;
  double residual;
  double lambda;
  double mu;
  bool inexact;
};

std::vector<CsvRow> read_trajectory_csv(const std::string& path);

/// Static 800x800 plot of a 2-D feasibility run: both set outlines, the
/// polylines of x- and y-iterates, and start/end markers. The view is
/// fitted to the iterate bounding box with 10% padding. Throws
/// NotDrawableError for non-2-D data or sets without outlines.
void emit_svg(const Trajectory& traj, const SetOracle& C, const SetOracle& D,
              const std::string& path);

/// {classification, tau?, exponent?, theta?, steps?, fit_r2, tail_start}.
nlohmann::json rate_report_json(const RateReport& report);

}  // namespace apmin
