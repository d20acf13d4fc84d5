#pragma once

#include <variant>
#include <vector>

#include "apmin/product_point.hpp"

namespace apmin {

// Outline primitives for the SVG writer. Only 2-D sets are drawable.
struct LineShape {
  Vec point;      // any point on the line
  Vec direction;  // unit direction
};
struct CircleShape {
  Vec center;
  double radius;
};
struct ParabolaShape {};  // the curve {(t, t^2)}
struct SegmentShape {
  Vec a;
  Vec b;
};
using Shape = std::variant<LineShape, CircleShape, ParabolaShape, SegmentShape>;

/// A closed set with a deterministic single-valued projection selection.
///
/// project() must return a member of the set that attains the Euclidean
/// distance; when the metric projection is set-valued the concrete class
/// documents its tie-break. Normal-cone distances are provided only where
/// the cone has an analytic formula (affine sets, spheres, smooth curves);
/// everywhere else has_normal_cone() is false and diagnostics fall back to
/// algorithmic residuals.
class SetOracle {
 public:
  virtual ~SetOracle() = default;

  virtual Eigen::Index dimension() const = 0;

  virtual Vec project(const Vec& p) const = 0;

  /// Membership within Euclidean distance tol. The default computes
  /// ||p - project(p)||; concrete sets may override with a cheaper test.
  virtual bool contains(const Vec& p, double tol) const {
    return (p - project(p)).norm() <= tol;
  }

  virtual bool has_normal_cone() const { return false; }

  /// dist(v, N_C(base)) for base on the set. Throws
  /// UnsupportedDiagnosticError when no cone formula is available.
  virtual double normal_cone_distance(const Vec& base, const Vec& v) const;

  /// 2-D outline for drawing; empty when the set is not drawable.
  virtual std::vector<Shape> outline() const { return {}; }
};

}  // namespace apmin
