#pragma once

#include <Eigen/Cholesky>
#include <memory>
#include <vector>

#include "apmin/set_oracle.hpp"

namespace apmin {

/// Affine set {x : A x = b} with A full row rank. Projection is the unique
/// Euclidean projection via the normal equations; the normal cone at any
/// member point is range(A^T).
class AffineSet : public SetOracle {
 public:
  AffineSet(Mat A, Vec b);

  /// {x : <normal, x> = offset}.
  static std::shared_ptr<AffineSet> hyperplane(const Vec& normal,
                                               double offset);
  /// Line through `point` with direction `dir` in R^2.
  static std::shared_ptr<AffineSet> line_2d(const Vec& point, const Vec& dir);

  Eigen::Index dimension() const override { return A_.cols(); }
  Vec project(const Vec& p) const override;
  bool has_normal_cone() const override { return true; }
  double normal_cone_distance(const Vec& base, const Vec& v) const override;
  std::vector<Shape> outline() const override;

  const Mat& A() const { return A_; }
  const Vec& b() const { return b_; }

 private:
  Mat A_;
  Vec b_;
  Eigen::LDLT<Mat> gram_;  // factorization of A A^T
};

/// Sphere {x : ||x - center|| = radius}. A point equal to the center
/// projects to center + radius * e_1 (canonical tie-break).
class Sphere : public SetOracle {
 public:
  Sphere(Vec center, double radius);

  Eigen::Index dimension() const override { return center_.size(); }
  Vec project(const Vec& p) const override;
  bool contains(const Vec& p, double tol) const override;
  bool has_normal_cone() const override { return true; }
  double normal_cone_distance(const Vec& base, const Vec& v) const override;
  std::vector<Shape> outline() const override;

  const Vec& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Vec center_;
  double radius_;
};

/// The curve {(t, t^2)} in R^2. Projection solves the cubic stationarity
/// equation 2(t - p1) + 4 t (t^2 - p2) = 0 over all real roots and keeps the
/// closest point; exact distance ties go to the smaller t.
class ParabolaCurve : public SetOracle {
 public:
  ParabolaCurve() = default;

  Eigen::Index dimension() const override { return 2; }
  Vec project(const Vec& p) const override;
  bool has_normal_cone() const override { return true; }
  double normal_cone_distance(const Vec& base, const Vec& v) const override;
  std::vector<Shape> outline() const override;
};

/// Closed segment [a, b].
class Segment : public SetOracle {
 public:
  Segment(Vec a, Vec b);

  Eigen::Index dimension() const override { return a_.size(); }
  Vec project(const Vec& p) const override;
  std::vector<Shape> outline() const override;

  const Vec& a() const { return a_; }
  const Vec& b() const { return b_; }

 private:
  Vec a_;
  Vec b_;
};

/// Finite union of closed sets. Projection returns the member candidate with
/// the smallest distance; exact ties go to the lowest member index. No
/// normal-cone oracle is provided (cones at shared points are not analytic
/// here).
class UnionSet : public SetOracle {
 public:
  explicit UnionSet(std::vector<std::shared_ptr<const SetOracle>> members);

  Eigen::Index dimension() const override;
  Vec project(const Vec& p) const override;
  bool contains(const Vec& p, double tol) const override;
  std::vector<Shape> outline() const override;

  const std::vector<std::shared_ptr<const SetOracle>>& members() const {
    return members_;
  }

 private:
  std::vector<std::shared_ptr<const SetOracle>> members_;
};

// Free projection operators. The class methods above delegate to these.
Vec project_affine(const Mat& A, const Vec& b, const Vec& p);
Vec project_sphere(const Vec& center, double radius, const Vec& p);
Vec project_parabola(const Vec& p);
Vec project_union(const std::vector<const SetOracle*>& sets, const Vec& p);

/// All real roots of c3 t^3 + c2 t^2 + c1 t + c0 (c3 != 0), Newton-polished,
/// ascending.
std::vector<double> solve_cubic_real(double c3, double c2, double c1,
                                     double c0);

/// dist(0, dL(z)) for the coupling bifunction of two sets,
///   L(x, y) = delta_C(x) + 1/2 ||x - y||^2 + delta_D(y),
/// evaluated as ( dist^2(y-x, N_C(x)) + dist^2(x-y, N_D(y)) )^(1/2).
/// Requires x in C and y in D (within membership_tol) and normal-cone
/// oracles on both sets.
double dist_subdifferential_feasibility(const SetOracle& C, const SetOracle& D,
                                        const ProductPoint& z,
                                        double membership_tol = 1e-8);

}  // namespace apmin
