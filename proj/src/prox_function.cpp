#include "apmin/prox_function.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "apmin/errors.hpp"
#include "apmin/scalar_minimize.hpp"

namespace apmin {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_weight(double w) {
  if (!(w > 0.0)) throw ConfigError("prox weight must be positive");
}
}  // namespace

// ---------------------------------------------------------------------------
// IndicatorFunction

IndicatorFunction::IndicatorFunction(std::shared_ptr<const SetOracle> set,
                                     double membership_tol)
    : set_(std::move(set)), tol_(membership_tol) {
  if (!set_) throw ConfigError("IndicatorFunction: null set");
}

double IndicatorFunction::value(const Vec& u) const {
  return set_->contains(u, tol_) ? 0.0 : kInf;
}

ProxResult IndicatorFunction::prox(const Vec& point, double weight) const {
  require_weight(weight);
  return {set_->project(point), true};
}

std::optional<double> IndicatorFunction::first_order_residual(
    const Vec& u, const Vec& point, double weight) const {
  // Optimality: (point - u)/w lies in the normal cone at u.
  if (!set_->has_normal_cone()) return std::nullopt;
  return set_->normal_cone_distance(u, (point - u) / weight);
}

// ---------------------------------------------------------------------------
// AbsoluteValueFunction

AbsoluteValueFunction::AbsoluteValueFunction(double scale) : scale_(scale) {
  if (!(scale >= 0.0)) throw ConfigError("AbsoluteValue: scale must be >= 0");
}

double AbsoluteValueFunction::value(const Vec& u) const {
  return scale_ * u.lpNorm<1>();
}

ProxResult AbsoluteValueFunction::prox(const Vec& point, double weight) const {
  require_weight(weight);
  const double t = scale_ * weight;
  Vec out(point.size());
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    double p = point(i);
    out(i) = (std::abs(p) <= t) ? 0.0 : p - std::copysign(t, p);
  }
  return {out, true};
}

std::optional<double> AbsoluteValueFunction::first_order_residual(
    const Vec& u, const Vec& point, double weight) const {
  double sq = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    double r;
    double slope = (u(i) - point(i)) / weight;
    if (u(i) != 0.0) {
      r = scale_ * (u(i) > 0 ? 1.0 : -1.0) + slope;
    } else {
      r = std::max(0.0, std::abs(slope) - scale_);
    }
    sq += r * r;
  }
  return std::sqrt(sq);
}

// ---------------------------------------------------------------------------
// QuadraticFunction

QuadraticFunction::QuadraticFunction(Mat curvature, Vec center, double offset)
    : M_(std::move(curvature)), center_(std::move(center)), offset_(offset) {
  if (M_.rows() != M_.cols() || M_.rows() != center_.size()) {
    throw ConfigError("Quadratic: curvature/center dimensions disagree");
  }
  M_ = ((M_ + M_.transpose()) / 2.0).eval();  // symmetrize
  Eigen::SelfAdjointEigenSolver<Mat> es(M_, Eigen::EigenvaluesOnly);
  double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw ConfigError("Quadratic: curvature matrix must be PSD");
  }
}

namespace {
Mat scaled_identity(double factor, Eigen::Index dim) {
  return factor * Mat::Identity(dim, dim);
}
}  // namespace

QuadraticFunction::QuadraticFunction(double curvature, Vec center)
    : QuadraticFunction(scaled_identity(2.0 * curvature, center.size()),
                        center) {}

std::shared_ptr<QuadraticFunction> QuadraticFunction::least_squares(
    const Mat& A, const Vec& b) {
  if (A.rows() != b.size()) {
    throw ConfigError("least_squares: rows(A) != size(b)");
  }
  // 1/2||Au-b||^2 = 1/2 (u-c)^T A^T A (u-c) + 1/2||Ac-b||^2 at any
  // least-squares solution c (the cross term vanishes by normal equations).
  Vec c = A.completeOrthogonalDecomposition().solve(b);
  double offset = 0.5 * (A * c - b).squaredNorm();
  return std::make_shared<QuadraticFunction>(Mat(A.transpose() * A), c,
                                             offset);
}

std::shared_ptr<QuadraticFunction> QuadraticFunction::zero(Eigen::Index dim) {
  return std::make_shared<QuadraticFunction>(Mat(Mat::Zero(dim, dim)),
                                             Vec(Vec::Zero(dim)));
}

double QuadraticFunction::value(const Vec& u) const {
  Vec r = u - center_;
  return 0.5 * r.dot(M_ * r) + offset_;
}

ProxResult QuadraticFunction::prox(const Vec& point, double weight) const {
  require_weight(weight);
  if (M_.isZero(0.0)) return {point, true};  // the zero function: identity
  Mat H = M_ + Mat::Identity(M_.rows(), M_.cols()) / weight;
  Vec rhs = M_ * center_ + point / weight;
  return {H.ldlt().solve(rhs), true};
}

std::optional<double> QuadraticFunction::first_order_residual(
    const Vec& u, const Vec& point, double weight) const {
  return (M_ * (u - center_) + (u - point) / weight).norm();
}

// ---------------------------------------------------------------------------
// SeparableSumFunction

SeparableSumFunction::SeparableSumFunction(
    std::vector<std::shared_ptr<const ProxFunction>> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw ConfigError("SeparableSum: no entries");
  for (const auto& e : entries_) {
    if (!e || (e->dimension() != 1 && e->dimension() != -1)) {
      throw ConfigError("SeparableSum: entries must be one-dimensional");
    }
  }
}

double SeparableSumFunction::value(const Vec& u) const {
  double total = 0.0;
  Vec one(1);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    one(0) = u(i);
    total += entries_[static_cast<std::size_t>(i)]->value(one);
    if (total == kInf) return kInf;
  }
  return total;
}

ProxResult SeparableSumFunction::prox(const Vec& point, double weight) const {
  require_weight(weight);
  Vec out(point.size());
  bool exact = true;
  Vec one(1);
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    one(0) = point(i);
    ProxResult r = entries_[static_cast<std::size_t>(i)]->prox(one, weight);
    out(i) = r.point(0);
    exact = exact && r.exact;
  }
  return {out, exact};
}

std::optional<double> SeparableSumFunction::first_order_residual(
    const Vec& u, const Vec& point, double weight) const {
  double sq = 0.0;
  Vec ui(1), pi(1);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    ui(0) = u(i);
    pi(0) = point(i);
    auto r = entries_[static_cast<std::size_t>(i)]->first_order_residual(
        ui, pi, weight);
    if (!r) return std::nullopt;
    sq += (*r) * (*r);
  }
  return std::sqrt(sq);
}

// ---------------------------------------------------------------------------
// GenericSmooth1DFunction

GenericSmooth1DFunction::GenericSmooth1DFunction(
    std::function<double(double)> value, std::function<double(double)> derivative,
    double lo, double hi, int scan_points)
    : f_(std::move(value)),
      df_(std::move(derivative)),
      lo_(lo),
      hi_(hi),
      scan_points_(scan_points) {
  if (!f_) throw ConfigError("GenericSmooth1D: value callback required");
  if (!(hi_ > lo_) || !std::isfinite(lo_) || !std::isfinite(hi_)) {
    throw ConfigError("GenericSmooth1D: bracket must be a finite interval");
  }
  if (scan_points_ < 16) throw ConfigError("GenericSmooth1D: scan too coarse");
}

double GenericSmooth1DFunction::value(const Vec& u) const { return f_(u(0)); }

ProxResult GenericSmooth1DFunction::prox(const Vec& point,
                                         double weight) const {
  require_weight(weight);
  const double p = point(0);
  auto obj = [&](double u) {
    double d = u - p;
    return f_(u) + d * d / (2.0 * weight);
  };
  auto dobj = [&](double u) { return df_(u) + (u - p) / weight; };

  // Coarse scan over the declared bracket.
  const double h = (hi_ - lo_) / (scan_points_ - 1);
  std::vector<double> vals(static_cast<std::size_t>(scan_points_));
  int best_i = 0;
  for (int i = 0; i < scan_points_; ++i) {
    vals[static_cast<std::size_t>(i)] = obj(lo_ + i * h);
    if (vals[static_cast<std::size_t>(i)] < vals[static_cast<std::size_t>(best_i)]) best_i = i;
  }
  if (best_i == 0 || best_i == scan_points_ - 1) {
    throw Error("1-D prox minimizer escapes the declared bracket [" +
                std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
  }

  // Refine every interior local minimum of the scan; keep the global one,
  // ties to the smaller argument.
  double best_u = 0.0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < scan_points_; ++i) {
    if (vals[static_cast<std::size_t>(i)] > vals[static_cast<std::size_t>(i - 1)] ||
        vals[static_cast<std::size_t>(i)] > vals[static_cast<std::size_t>(i + 1)]) {
      continue;
    }
    double a = lo_ + (i - 1) * h;
    double b = lo_ + (i + 1) * h;
    double u = golden_section_min(obj, a, b, 1e-10);
    if (df_) {
      // Newton polish on the stationarity equation, with a bisection
      // fallback on the sign change; targets |obj'(u)| <= 1e-12.
      double ga = dobj(a), gb = dobj(b);
      for (int it = 0; it < 60 && std::abs(dobj(u)) > 1e-12; ++it) {
        double g = dobj(u);
        double eps = std::max(1e-9, 1e-7 * std::abs(u));
        double curv = (dobj(u + eps) - dobj(u - eps)) / (2.0 * eps);
        double next = (curv != 0.0) ? u - g / curv : u;
        if (!(next > a && next < b) || curv == 0.0) {
          if (ga * gb <= 0.0) {
            double mid = 0.5 * (a + b);
            if (ga * dobj(mid) <= 0.0) {
              b = mid;
              gb = dobj(mid);
            } else {
              a = mid;
              ga = dobj(mid);
            }
            next = 0.5 * (a + b);
          } else {
            break;
          }
        }
        if (next == u) break;
        u = next;
      }
    }
    double v = obj(u);
    if (!std::isfinite(best_v)) {
      best_v = v;
      best_u = u;
      continue;
    }
    double tie_tol = 1e-12 * std::max(1.0, std::abs(best_v));
    if (v < best_v - tie_tol) {
      best_v = v;
      best_u = u;
    } else if (v <= best_v + tie_tol && u < best_u) {
      best_u = u;  // value tie: lexicographic selection
    }
  }

  Vec out(1);
  out << best_u;
  return {out, false};
}

std::optional<double> GenericSmooth1DFunction::first_order_residual(
    const Vec& u, const Vec& point, double weight) const {
  if (!df_) return std::nullopt;
  return std::abs(df_(u(0)) + (u(0) - point(0)) / weight);
}

}  // namespace apmin
