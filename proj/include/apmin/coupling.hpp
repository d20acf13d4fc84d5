#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "apmin/product_point.hpp"

namespace apmin {

/// Equivalent plain prox data for one block subproblem: the block objective
/// f(u) + Q(u, y) + (1/2 lambda)||u - x||^2 collapses, up to an additive
/// constant, to f(u) + (1/2 weight)||u - point||^2.
struct ProxTarget {
  Vec point;
  double weight;
};

/// The smooth coupling term Q(x, y): value, partial gradients, and a
/// Lipschitz bound for the gradient on centered balls. Couplings that are
/// isotropic quadratics in one block also expose the reduction of that
/// block's subproblem to a plain prox; couplings without a reduction cannot
/// be solved exactly and the solver refuses them.
class Coupling {
 public:
  virtual ~Coupling() = default;

  virtual double value(const Vec& x, const Vec& y) const = 0;
  virtual Vec grad_x(const Vec& x, const Vec& y) const = 0;
  virtual Vec grad_y(const Vec& x, const Vec& y) const = 0;

  /// Lipschitz constant of the coupling gradient usable in the residual
  /// bound, valid on the centered ball of the given radius.
  virtual double lipschitz(double radius) const = 0;

  virtual std::optional<ProxTarget> reduce_x(const Vec& x, const Vec& y,
                                             double lambda) const {
    (void)x;
    (void)y;
    (void)lambda;
    return std::nullopt;
  }
  virtual std::optional<ProxTarget> reduce_y(const Vec& x_next, const Vec& y,
                                             double mu) const {
    (void)x_next;
    (void)y;
    (void)mu;
    return std::nullopt;
  }

  virtual std::string kind_name() const = 0;
};

/// Q = 0 (decoupled blocks).
class ZeroCoupling : public Coupling {
 public:
  double value(const Vec&, const Vec&) const override { return 0.0; }
  Vec grad_x(const Vec& x, const Vec&) const override {
    return Vec::Zero(x.size());
  }
  Vec grad_y(const Vec&, const Vec& y) const override {
    return Vec::Zero(y.size());
  }
  double lipschitz(double) const override { return 0.0; }
  std::optional<ProxTarget> reduce_x(const Vec& x, const Vec&,
                                     double lambda) const override {
    return ProxTarget{x, lambda};
  }
  std::optional<ProxTarget> reduce_y(const Vec&, const Vec& y,
                                     double mu) const override {
    return ProxTarget{y, mu};
  }
  std::string kind_name() const override { return "Zero"; }
};

/// Q = 1/2 ||x - y||^2 (requires n == m). The block reductions are the
/// weighted averages
///   x-block: point = (x/lambda + y) / (1/lambda + 1), weight = lambda/(1+lambda)
/// and symmetrically in y, so an indicator f turns the x-update into the
/// alternating projection step P_C((lambda^-1 x + y)/(lambda^-1 + 1)).
class SquaredDistanceCoupling : public Coupling {
 public:
  double value(const Vec& x, const Vec& y) const override {
    return 0.5 * (x - y).squaredNorm();
  }
  Vec grad_x(const Vec& x, const Vec& y) const override { return x - y; }
  Vec grad_y(const Vec& x, const Vec& y) const override { return y - x; }
  // Cross-block constant: || grad_x Q(x, y) - grad_x Q(x, y') || = ||y - y'||.
  double lipschitz(double) const override { return 1.0; }
  std::optional<ProxTarget> reduce_x(const Vec& x, const Vec& y,
                                     double lambda) const override {
    double inv = 1.0 / lambda;
    return ProxTarget{(inv * x + y) / (inv + 1.0), lambda / (1.0 + lambda)};
  }
  std::optional<ProxTarget> reduce_y(const Vec& x_next, const Vec& y,
                                     double mu) const override {
    double inv = 1.0 / mu;
    return ProxTarget{(inv * y + x_next) / (inv + 1.0), mu / (1.0 + mu)};
  }
  std::string kind_name() const override { return "SquaredDistance"; }
};

/// Q = kappa * <x, y> (requires n == m). Linear in each block, so it only
/// shifts the prox target.
class BilinearCoupling : public Coupling {
 public:
  explicit BilinearCoupling(double kappa) : kappa_(kappa) {}

  double value(const Vec& x, const Vec& y) const override {
    return kappa_ * x.dot(y);
  }
  Vec grad_x(const Vec&, const Vec& y) const override { return kappa_ * y; }
  Vec grad_y(const Vec& x, const Vec&) const override { return kappa_ * x; }
  double lipschitz(double) const override { return std::abs(kappa_); }
  std::optional<ProxTarget> reduce_x(const Vec& x, const Vec& y,
                                     double lambda) const override {
    return ProxTarget{x - lambda * kappa_ * y, lambda};
  }
  std::optional<ProxTarget> reduce_y(const Vec& x_next, const Vec& y,
                                     double mu) const override {
    return ProxTarget{y - mu * kappa_ * x_next, mu};
  }
  std::string kind_name() const override { return "Bilinear"; }
  double kappa() const { return kappa_; }

 private:
  double kappa_;
};

/// Arbitrary smooth coupling given by callbacks. No block reduction, so it
/// supports evaluation and diagnostics but not the exact solver.
class CustomCoupling : public Coupling {
 public:
  CustomCoupling(std::function<double(const Vec&, const Vec&)> value,
                 std::function<Vec(const Vec&, const Vec&)> grad_x,
                 std::function<Vec(const Vec&, const Vec&)> grad_y,
                 std::function<double(double)> lipschitz)
      : value_(std::move(value)),
        grad_x_(std::move(grad_x)),
        grad_y_(std::move(grad_y)),
        lipschitz_(std::move(lipschitz)) {}

  double value(const Vec& x, const Vec& y) const override {
    return value_(x, y);
  }
  Vec grad_x(const Vec& x, const Vec& y) const override {
    return grad_x_(x, y);
  }
  Vec grad_y(const Vec& x, const Vec& y) const override {
    return grad_y_(x, y);
  }
  double lipschitz(double radius) const override { return lipschitz_(radius); }
  std::string kind_name() const override { return "Custom"; }

 private:
  std::function<double(const Vec&, const Vec&)> value_;
  std::function<Vec(const Vec&, const Vec&)> grad_x_;
  std::function<Vec(const Vec&, const Vec&)> grad_y_;
  std::function<double(double)> lipschitz_;
};

}  // namespace apmin
