#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "apmin/solver.hpp"

namespace apmin {

/// A concrete desingularizing model phi for the inequality
///   phi'(L(z) - reference_value) * dist(0, dL(z)) >= 1
/// on the level band (reference_value, reference_value + level_radius)
/// intersected with a ball of neighborhood_radius around the reference
/// point (the ball membership is the caller's responsibility when sampling).
struct KLModel {
  enum class Kind { Power, Linear, Custom };

  Kind kind = Kind::Power;
  double theta = 0.5;       // Power: phi(s) = coefficient * s^(1-theta)
  double coefficient = 1.0; // c > 0 (Linear: phi(s) = c s)
  double level_radius = std::numeric_limits<double>::infinity();        // eta
  double neighborhood_radius = std::numeric_limits<double>::infinity(); // eps
  double reference_value = 0.0;                                         // L(zbar)
  std::function<double(double)> phi_prime_custom;

  static KLModel power(double theta, double coefficient,
                       double level_radius =
                           std::numeric_limits<double>::infinity(),
                       double neighborhood_radius =
                           std::numeric_limits<double>::infinity(),
                       double reference_value = 0.0);
  static KLModel linear(double coefficient,
                        double level_radius =
                            std::numeric_limits<double>::infinity(),
                        double reference_value = 0.0);

  double phi(double s) const;
  double phi_prime(double s) const;
  void validate() const;
};

/// Tail rate classification of a distance sequence d_k = ||z_k - z_limit||.
struct RateReport {
  enum class Kind { Finite, Linear, Sublinear };

  Kind classification;
  long finite_steps = -1;   // Finite: first index of the all-zero tail
  double tau = 0.0;         // Linear: d_k ~ tau^k, tau in (0,1)
  double exponent = 0.0;    // Sublinear: d_k ~ k^-p, p > 0
  std::optional<double> theta_estimate;  // only from a sublinear fit
  double fit_r2 = 0.0;
  std::size_t tail_start = 0;
};

/// Sum over recorded transitions of ||dx_k|| + ||dy_k||.
double trajectory_length(const Trajectory& traj);

/// ||z_k - limit|| for every record, using the trajectory's final iterate
/// as the limit proxy.
std::vector<double> distances_to_limit(const Trajectory& traj);

/// Classify the decay of a distance sequence.
///
/// Finite termination means the sequence reaches exactly zero before its
/// last entry and stays there. Otherwise the last 2% of entries are dropped
/// (the proxy limit poisons them), the final tail_fraction of what remains
/// is fitted both as log d ~ k (geometric) and log d ~ log k (power), and
/// the better tail R^2 wins with a 0.01 preference margin for the geometric
/// model. theta is reported only for sublinear fits, through
/// estimate_theta. Throws InsufficientDataError below 10 usable tail points.
RateReport classify_rate(const std::vector<double>& distances,
                         double tail_fraction);

/// Invert p = (1-theta)/(2 theta - 1) to theta = (1+p)/(1+2p); p must be
/// positive, and the result lies in (1/2, 1).
double estimate_theta(double p);

struct KLCheckResult {
  long checked = 0;
  long satisfied = 0;
  long skipped = 0;  // outside the level band

  double fraction() const {
    return checked == 0 ? 1.0
                        : static_cast<double>(satisfied) /
                              static_cast<double>(checked);
  }
};

/// Evaluate the desingularized slope inequality at each sample point:
/// phi'(L(z) - reference) * subdiff_dist(z) >= 1 - 1e-8. Points outside the
/// level band are skipped and counted separately.
KLCheckResult kl_inequality_check(
    const BiFunctionProblem& problem, const KLModel& model,
    const std::vector<ProductPoint>& points,
    const std::function<double(const ProductPoint&)>& subdiff_dist);

}  // namespace apmin
