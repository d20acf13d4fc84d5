#include "apmin/sets.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "apmin/errors.hpp"

namespace apmin {

double SetOracle::normal_cone_distance(const Vec&, const Vec&) const {
  throw UnsupportedDiagnosticError(
      "this set does not provide a normal-cone oracle");
}

// ---------------------------------------------------------------------------
// AffineSet

AffineSet::AffineSet(Mat A, Vec b) : A_(std::move(A)), b_(std::move(b)) {
  if (A_.rows() == 0 || A_.cols() == 0 || A_.rows() != b_.size()) {
    throw ConfigError("AffineSet: A must be nonempty with rows(A) == size(b)");
  }
  Eigen::FullPivLU<Mat> lu(A_);
  if (lu.rank() != A_.rows()) {
    throw ConfigError("AffineSet: A must have full row rank");
  }
  gram_.compute(A_ * A_.transpose());
}

std::shared_ptr<AffineSet> AffineSet::hyperplane(const Vec& normal,
                                                 double offset) {
  Mat A(1, normal.size());
  A.row(0) = normal.transpose();
  Vec b(1);
  b << offset;
  return std::make_shared<AffineSet>(A, b);
}

std::shared_ptr<AffineSet> AffineSet::line_2d(const Vec& point,
                                              const Vec& dir) {
  if (point.size() != 2 || dir.size() != 2) {
    throw ConfigError("line_2d expects 2-D data");
  }
  Vec normal(2);
  normal << -dir(1), dir(0);
  return hyperplane(normal, normal.dot(point));
}

Vec AffineSet::project(const Vec& p) const {
  return p + A_.transpose() * gram_.solve(b_ - A_ * p);
}

double AffineSet::normal_cone_distance(const Vec&, const Vec& v) const {
  // N = range(A^T); distance to the row space.
  Vec parallel = A_.transpose() * gram_.solve(A_ * v);
  return (v - parallel).norm();
}

std::vector<Shape> AffineSet::outline() const {
  if (A_.cols() != 2 || A_.rows() != 1) return {};
  Vec normal = A_.row(0).transpose();
  Vec dir(2);
  dir << -normal(1), normal(0);
  dir.normalize();
  Vec point = project(Vec::Zero(2));
  return {LineShape{point, dir}};
}

// ---------------------------------------------------------------------------
// Sphere

Sphere::Sphere(Vec center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (!(radius > 0.0)) throw ConfigError("Sphere: radius must be positive");
}

Vec Sphere::project(const Vec& p) const {
  Vec d = p - center_;
  double norm = d.norm();
  if (norm == 0.0) {
    Vec out = center_;
    out(0) += radius_;
    return out;
  }
  return center_ + (radius_ / norm) * d;
}

bool Sphere::contains(const Vec& p, double tol) const {
  return std::abs((p - center_).norm() - radius_) <= tol;
}

double Sphere::normal_cone_distance(const Vec& base, const Vec& v) const {
  // Normal space at a sphere point is the radial line.
  Vec u = (base - center_).normalized();
  return (v - u.dot(v) * u).norm();
}

std::vector<Shape> Sphere::outline() const {
  if (center_.size() != 2) return {};
  return {CircleShape{center_, radius_}};
}

// ---------------------------------------------------------------------------
// ParabolaCurve

namespace {

double parabola_sq_dist(double t, const Vec& p) {
  double dx = t - p(0);
  double dy = t * t - p(1);
  return dx * dx + dy * dy;
}

}  // namespace

Vec ParabolaCurve::project(const Vec& p) const {
  if (p.size() != 2) throw ConfigError("parabola projection expects R^2");
  // d/dt [ (t - p1)^2 + (t^2 - p2)^2 ] = 0
  //   <=> 4 t^3 + (2 - 4 p2) t - 2 p1 = 0.
  std::vector<double> roots =
      solve_cubic_real(4.0, 0.0, 2.0 - 4.0 * p(1), -2.0 * p(0));
  double best_t = roots.front();
  double best_d = parabola_sq_dist(best_t, p);
  for (std::size_t i = 1; i < roots.size(); ++i) {
    double d = parabola_sq_dist(roots[i], p);
    // Ties (within roundoff of the stationarity solve) keep the smaller t;
    // roots arrive ascending, so only strict improvement replaces.
    if (d < best_d - 1e-14 * std::max(1.0, best_d)) {
      best_d = d;
      best_t = roots[i];
    }
  }
  Vec out(2);
  out << best_t, best_t * best_t;
  return out;
}

double ParabolaCurve::normal_cone_distance(const Vec& base,
                                           const Vec& v) const {
  // Normal line at (t, t^2) is spanned by (2t, -1).
  Vec n(2);
  n << 2.0 * base(0), -1.0;
  n.normalize();
  return (v - n.dot(v) * n).norm();
}

std::vector<Shape> ParabolaCurve::outline() const { return {ParabolaShape{}}; }

// ---------------------------------------------------------------------------
// Segment

Segment::Segment(Vec a, Vec b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) throw ConfigError("Segment: endpoint dims differ");
}

Vec Segment::project(const Vec& p) const {
  Vec d = b_ - a_;
  double len2 = d.squaredNorm();
  if (len2 == 0.0) return a_;
  double t = std::clamp((p - a_).dot(d) / len2, 0.0, 1.0);
  return a_ + t * d;
}

std::vector<Shape> Segment::outline() const {
  if (a_.size() != 2) return {};
  return {SegmentShape{a_, b_}};
}

// ---------------------------------------------------------------------------
// UnionSet

UnionSet::UnionSet(std::vector<std::shared_ptr<const SetOracle>> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw ConfigError("UnionSet: needs at least one member");
  for (const auto& s : members_) {
    if (s->dimension() != members_.front()->dimension()) {
      throw ConfigError("UnionSet: member dimensions differ");
    }
  }
}

Eigen::Index UnionSet::dimension() const {
  return members_.front()->dimension();
}

Vec UnionSet::project(const Vec& p) const {
  std::vector<const SetOracle*> raw;
  raw.reserve(members_.size());
  for (const auto& s : members_) raw.push_back(s.get());
  return project_union(raw, p);
}

bool UnionSet::contains(const Vec& p, double tol) const {
  for (const auto& s : members_) {
    if (s->contains(p, tol)) return true;
  }
  return false;
}

std::vector<Shape> UnionSet::outline() const {
  std::vector<Shape> all;
  for (const auto& s : members_) {
    auto part = s->outline();
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

// ---------------------------------------------------------------------------
// Free operators

Vec project_affine(const Mat& A, const Vec& b, const Vec& p) {
  return AffineSet(A, b).project(p);
}

Vec project_sphere(const Vec& center, double radius, const Vec& p) {
  return Sphere(center, radius).project(p);
}

Vec project_parabola(const Vec& p) { return ParabolaCurve().project(p); }

Vec project_union(const std::vector<const SetOracle*>& sets, const Vec& p) {
  if (sets.empty()) throw ConfigError("project_union: empty set list");
  Vec best = sets.front()->project(p);
  double best_d = (p - best).squaredNorm();
  for (std::size_t i = 1; i < sets.size(); ++i) {
    Vec cand = sets[i]->project(p);
    double d = (p - cand).squaredNorm();
    if (d < best_d) {  // strict: exact ties keep the lowest index
      best_d = d;
      best = cand;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Cubic roots

namespace {

double cubic_eval(double c3, double c2, double c1, double c0, double t) {
  return ((c3 * t + c2) * t + c1) * t + c0;
}

double cubic_newton_polish(double c3, double c2, double c1, double c0,
                           double t) {
  for (int i = 0; i < 16; ++i) {
    double f = cubic_eval(c3, c2, c1, c0, t);
    double df = (3.0 * c3 * t + 2.0 * c2) * t + c1;
    if (df == 0.0) break;
    double step = f / df;
    t -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

}  // namespace

std::vector<double> solve_cubic_real(double c3, double c2, double c1,
                                     double c0) {
  if (c3 == 0.0) throw ConfigError("solve_cubic_real: leading coefficient zero");
  // Depressed form t = s - c2/(3 c3):  s^3 + p s + q = 0.
  double a = c2 / c3, b = c1 / c3, c = c0 / c3;
  double shift = a / 3.0;
  double p = b - a * a / 3.0;
  double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

  std::vector<double> roots;
  double disc = -4.0 * p * p * p - 27.0 * q * q;
  if (disc > 0.0) {
    // Three distinct real roots: trigonometric method.
    double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0) - shift);
    }
  } else if (p == 0.0 && q == 0.0) {
    roots.push_back(-shift);
  } else {
    // One real root (plus a possible double root when disc == 0).
    double half_q = q / 2.0;
    double rad = std::sqrt(std::max(0.0, half_q * half_q + p * p * p / 27.0));
    double u = std::cbrt(-half_q + rad);
    double v = std::cbrt(-half_q - rad);
    roots.push_back(u + v - shift);
    if (disc == 0.0 && (u + v) != 0.0) {
      roots.push_back(-(u + v) / 2.0 - shift);
    }
  }

  for (double& t : roots) t = cubic_newton_polish(c3, c2, c1, c0, t);
  std::sort(roots.begin(), roots.end());
  // Drop duplicates produced by polish convergence to the same root.
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) {
                            return std::abs(x - y) <=
                                   1e-9 * std::max({1.0, std::abs(x),
                                                    std::abs(y)});
                          }),
              roots.end());
  return roots;
}

// ---------------------------------------------------------------------------

double dist_subdifferential_feasibility(const SetOracle& C, const SetOracle& D,
                                        const ProductPoint& z,
                                        double membership_tol) {
  if (!C.contains(z.x, membership_tol)) {
    throw Error("dist_subdifferential_feasibility: x is not a member of C");
  }
  if (!D.contains(z.y, membership_tol)) {
    throw Error("dist_subdifferential_feasibility: y is not a member of D");
  }
  if (!C.has_normal_cone() || !D.has_normal_cone()) {
    throw UnsupportedDiagnosticError(
        "dist_subdifferential_feasibility: both sets need normal-cone "
        "oracles; fall back to the algorithmic residual instead");
  }
  double dc = C.normal_cone_distance(z.x, z.y - z.x);
  double dd = D.normal_cone_distance(z.y, z.x - z.y);
  return std::sqrt(dc * dc + dd * dd);
}

}  // namespace apmin
