#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "apmin/set_oracle.hpp"

namespace apmin {

struct ProxResult {
  Vec point;
  bool exact;  // false when a numeric 1-D search produced the minimizer
};

/// One of the block functions f or g: value oracle plus an exact proximal
/// map  prox_w(p) = argmin f(u) + (1/2w) ||u - p||^2.
///
/// Every catalog entry's prox satisfies the first-order optimality condition
/// of its subproblem; first_order_residual() reports |grad| (or the
/// subgradient distance) where a formula exists so tests can verify that.
class ProxFunction {
 public:
  virtual ~ProxFunction() = default;

  /// Required input dimension, or -1 when any dimension is accepted.
  virtual Eigen::Index dimension() const = 0;

  /// Extended-real value; +inf outside the domain.
  virtual double value(const Vec& u) const = 0;

  virtual ProxResult prox(const Vec& point, double weight) const = 0;

  /// dist(0, d[f + (1/2w)||. - point||^2](u)), when computable.
  virtual std::optional<double> first_order_residual(const Vec& u,
                                                     const Vec& point,
                                                     double weight) const {
    (void)u;
    (void)point;
    (void)weight;
    return std::nullopt;
  }

  virtual std::string kind_name() const = 0;
};

/// Indicator of a closed set; prox is the set's projection for any weight.
class IndicatorFunction : public ProxFunction {
 public:
  explicit IndicatorFunction(std::shared_ptr<const SetOracle> set,
                             double membership_tol = 1e-10);

  Eigen::Index dimension() const override { return set_->dimension(); }
  double value(const Vec& u) const override;
  ProxResult prox(const Vec& point, double weight) const override;
  std::optional<double> first_order_residual(const Vec& u, const Vec& point,
                                             double weight) const override;
  std::string kind_name() const override { return "IndicatorSet"; }

  const SetOracle& set() const { return *set_; }

 private:
  std::shared_ptr<const SetOracle> set_;
  double tol_;
};

/// scale * sum_i |u_i|; prox is the componentwise soft threshold by
/// scale * weight.
class AbsoluteValueFunction : public ProxFunction {
 public:
  explicit AbsoluteValueFunction(double scale);

  Eigen::Index dimension() const override { return -1; }
  double value(const Vec& u) const override;
  ProxResult prox(const Vec& point, double weight) const override;
  std::optional<double> first_order_residual(const Vec& u, const Vec& point,
                                             double weight) const override;
  std::string kind_name() const override { return "AbsoluteValue"; }

  double scale() const { return scale_; }

 private:
  double scale_;
};

/// Convex quadratic 1/2 (u-c)^T M (u-c) + offset with M symmetric PSD.
/// The scalar form a*||u-c||^2 uses M = 2a I. Prox solves the SPD system
/// (M + I/w) u = M c + p/w.
class QuadraticFunction : public ProxFunction {
 public:
  QuadraticFunction(Mat curvature, Vec center, double offset = 0.0);
  /// a * ||u - center||^2.
  QuadraticFunction(double curvature, Vec center);

  /// 1/2 ||A u - b||^2 expressed in centered form.
  static std::shared_ptr<QuadraticFunction> least_squares(const Mat& A,
                                                          const Vec& b);
  /// The zero function on R^dim (a.k.a. the indicator of the whole space).
  static std::shared_ptr<QuadraticFunction> zero(Eigen::Index dim);

  Eigen::Index dimension() const override { return center_.size(); }
  double value(const Vec& u) const override;
  ProxResult prox(const Vec& point, double weight) const override;
  std::optional<double> first_order_residual(const Vec& u, const Vec& point,
                                             double weight) const override;
  std::string kind_name() const override { return "Quadratic"; }

 private:
  Mat M_;
  Vec center_;
  double offset_;
};

/// Separable sum of 1-D entries, applied coordinatewise.
class SeparableSumFunction : public ProxFunction {
 public:
  explicit SeparableSumFunction(
      std::vector<std::shared_ptr<const ProxFunction>> entries);

  Eigen::Index dimension() const override {
    return static_cast<Eigen::Index>(entries_.size());
  }
  double value(const Vec& u) const override;
  ProxResult prox(const Vec& point, double weight) const override;
  std::optional<double> first_order_residual(const Vec& u, const Vec& point,
                                             double weight) const override;
  std::string kind_name() const override { return "SeparableSum"; }

 private:
  std::vector<std::shared_ptr<const ProxFunction>> entries_;
};

/// A smooth 1-D function given by callbacks, minimized numerically over a
/// declared bracket: coarse scan, golden-section refinement, then (with a
/// derivative) Newton polish to first-order residual <= 1e-12. Results are
/// tagged inexact; distance ties go to the smaller argument.
class GenericSmooth1DFunction : public ProxFunction {
 public:
  GenericSmooth1DFunction(std::function<double(double)> value,
                          std::function<double(double)> derivative,  // may be null
                          double lo, double hi, int scan_points = 4096);

  Eigen::Index dimension() const override { return 1; }
  double value(const Vec& u) const override;
  ProxResult prox(const Vec& point, double weight) const override;
  std::optional<double> first_order_residual(const Vec& u, const Vec& point,
                                             double weight) const override;
  std::string kind_name() const override { return "GenericSmooth1D"; }

 private:
  std::function<double(double)> f_;
  std::function<double(double)> df_;
  double lo_, hi_;
  int scan_points_;
};

}  // namespace apmin
