#include "apmin/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "apmin/errors.hpp"

namespace apmin {

KLModel KLModel::power(double theta, double coefficient, double level_radius,
                       double neighborhood_radius, double reference_value) {
  KLModel m;
  m.kind = Kind::Power;
  m.theta = theta;
  m.coefficient = coefficient;
  m.level_radius = level_radius;
  m.neighborhood_radius = neighborhood_radius;
  m.reference_value = reference_value;
  m.validate();
  return m;
}

KLModel KLModel::linear(double coefficient, double level_radius,
                        double reference_value) {
  KLModel m;
  m.kind = Kind::Linear;
  m.coefficient = coefficient;
  m.level_radius = level_radius;
  m.reference_value = reference_value;
  m.validate();
  return m;
}

void KLModel::validate() const {
  if (!(coefficient > 0.0)) throw ConfigError("KLModel: coefficient must be > 0");
  if (!(level_radius > 0.0)) throw ConfigError("KLModel: level radius must be > 0");
  if (!(neighborhood_radius > 0.0)) {
    throw ConfigError("KLModel: neighborhood radius must be > 0");
  }
  if (kind == Kind::Power && !(theta >= 0.0 && theta < 1.0)) {
    throw ConfigError("KLModel: power exponent theta must lie in [0, 1)");
  }
  if (kind == Kind::Custom && !phi_prime_custom) {
    throw ConfigError("KLModel: custom model needs a phi' callback");
  }
}

double KLModel::phi(double s) const {
  switch (kind) {
    case Kind::Power:
      return coefficient * std::pow(s, 1.0 - theta);
    case Kind::Linear:
      return coefficient * s;
    case Kind::Custom:
      throw ConfigError("KLModel: custom models provide phi' only");
  }
  return 0.0;
}

double KLModel::phi_prime(double s) const {
  switch (kind) {
    case Kind::Power:
      return coefficient * (1.0 - theta) * std::pow(s, -theta);
    case Kind::Linear:
      return coefficient;
    case Kind::Custom:
      return phi_prime_custom(s);
  }
  return 0.0;
}

double trajectory_length(const Trajectory& traj) {
  double total = 0.0;
  for (const auto& rec : traj.records) total += rec.step_x + rec.step_y;
  return total;
}

std::vector<double> distances_to_limit(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.records.size());
  for (const auto& rec : traj.records) {
    out.push_back(rec.z.distance_to(traj.limit));
  }
  return out;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double r2 = 0.0;
  bool ok = false;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  LineFit fit;
  const std::size_t n = xs.size();
  if (n < 2) return fit;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.ok = true;
  return fit;
}

}  // namespace

RateReport classify_rate(const std::vector<double>& distances,
                         double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw ConfigError("classify_rate: tail_fraction must lie in (0, 1]");
  }
  const std::size_t n = distances.size();
  if (n == 0) throw InsufficientDataError("classify_rate: empty sequence");

  // Finite termination: an exact-zero tail that starts before the final
  // entry (a lone zero at the end is just the limit proxy seeing itself).
  std::size_t zero_start = n;
  while (zero_start > 0 && distances[zero_start - 1] == 0.0) --zero_start;
  if (zero_start == 0 || (zero_start < n && zero_start + 1 < n)) {
    RateReport rep;
    rep.classification = RateReport::Kind::Finite;
    rep.finite_steps = static_cast<long>(zero_start);
    rep.fit_r2 = 1.0;
    rep.tail_start = zero_start;
    return rep;
  }

  // Drop the last 2% (at least one entry, the proxy zero) before fitting.
  const std::size_t trim = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(0.02 * static_cast<double>(n))));
  if (n <= trim) throw InsufficientDataError("classify_rate: nothing to fit");
  const std::size_t usable = n - trim;
  const std::size_t tail_start = static_cast<std::size_t>(
      std::floor(static_cast<double>(usable) * (1.0 - tail_fraction)));

  std::vector<double> ks, logk, logd;
  for (std::size_t k = tail_start; k < usable; ++k) {
    double d = distances[k];
    if (!(d > 0.0) || !std::isfinite(d)) continue;
    ks.push_back(static_cast<double>(k));
    logd.push_back(std::log(d));
  }
  if (ks.size() < 10) {
    throw InsufficientDataError(
        "classify_rate: fewer than 10 usable tail points (have " +
        std::to_string(ks.size()) + ")");
  }

  LineFit lin = fit_line(ks, logd);

  std::vector<double> logk_pos, logd_pos;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] >= 1.0) {
      logk_pos.push_back(std::log(ks[i]));
      logd_pos.push_back(logd[i]);
    }
  }
  LineFit pow = fit_line(logk_pos, logd_pos);

  const bool lin_valid = lin.ok && lin.slope < 0.0;
  const bool pow_valid = pow.ok && pow.slope < 0.0 && logk_pos.size() >= 10;

  RateReport rep;
  rep.tail_start = tail_start;
  if (lin_valid && (!pow_valid || lin.r2 >= pow.r2 - 0.01)) {
    rep.classification = RateReport::Kind::Linear;
    rep.tau = std::exp(lin.slope);
    rep.fit_r2 = lin.r2;
    return rep;
  }
  if (pow_valid) {
    rep.classification = RateReport::Kind::Sublinear;
    rep.exponent = -pow.slope;
    rep.theta_estimate = estimate_theta(rep.exponent);
    rep.fit_r2 = pow.r2;
    return rep;
  }
  throw Error(
      "classify_rate: the tail is not decaying; neither a geometric nor a "
      "power model fits");
}

double estimate_theta(double p) {
  if (!(p > 0.0)) throw ConfigError("estimate_theta: exponent must be > 0");
  return (1.0 + p) / (1.0 + 2.0 * p);
}

KLCheckResult kl_inequality_check(
    const BiFunctionProblem& problem, const KLModel& model,
    const std::vector<ProductPoint>& points,
    const std::function<double(const ProductPoint&)>& subdiff_dist) {
  model.validate();
  KLCheckResult result;
  for (const auto& z : points) {
    double gap = eval_L(problem, z) - model.reference_value;
    if (!(gap > 0.0) || !(gap < model.level_radius)) {
      ++result.skipped;
      continue;
    }
    ++result.checked;
    if (model.phi_prime(gap) * subdiff_dist(z) >= 1.0 - 1e-8) {
      ++result.satisfied;
    }
  }
  return result;
}

}  // namespace apmin
