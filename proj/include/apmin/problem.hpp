#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "apmin/coupling.hpp"
#include "apmin/product_point.hpp"
#include "apmin/prox_function.hpp"

namespace apmin {

/// The bifunction L(x, y) = f(x) + Q(x, y) + g(y) with f, g proper lower
/// semicontinuous (given through their prox oracles) and Q smooth.
///
/// lower_bound certifies that inf L > -inf; it defaults to nothing and must
/// be supplied, since the descent bookkeeping depends on it. Construction
/// probes that f and g are proper (their prox lands in the domain) and that
/// dimensions are consistent. Instances are immutable and safe to share
/// across threads.
class BiFunctionProblem {
 public:
  BiFunctionProblem(std::shared_ptr<const ProxFunction> f,
                    std::shared_ptr<const ProxFunction> g,
                    std::shared_ptr<const Coupling> q, Eigen::Index n,
                    Eigen::Index m, double lower_bound);

  const ProxFunction& f() const { return *f_; }
  const ProxFunction& g() const { return *g_; }
  const Coupling& q() const { return *q_; }
  Eigen::Index n() const { return n_; }
  Eigen::Index m() const { return m_; }
  double lower_bound() const { return lower_bound_; }

  /// Lipschitz constant of the coupling gradient on the centered ball.
  double q_lipschitz(double radius) const { return q_->lipschitz(radius); }

 private:
  std::shared_ptr<const ProxFunction> f_;
  std::shared_ptr<const ProxFunction> g_;
  std::shared_ptr<const Coupling> q_;
  Eigen::Index n_, m_;
  double lower_bound_;
};

/// f(x) + Q(x, y) + g(y); +inf exactly when a block is outside its domain.
double eval_L(const BiFunctionProblem& problem, const ProductPoint& z);

/// The subgradient witness carried by one full alternating step
/// z_prev -> z_next with weights (lambda, mu):
///   V = ( (x_prev - x_next)/lambda + grad_x Q(x_next, y_next)
///                                  - grad_x Q(x_next, y_prev),
///         (y_prev - y_next)/mu ).
/// When the sub-solves are exact, V is an element of dL(z_next).
Vec residual_vector(const BiFunctionProblem& problem,
                    const ProductPoint& z_prev, const ProductPoint& z_next,
                    double lambda, double mu);

/// Max relative componentwise error between the analytic coupling gradient
/// and a central difference of step h.
double check_gradient(const BiFunctionProblem& problem, const ProductPoint& z,
                      double h);

/// Per-iteration weights, constant or tabulated (a table repeats its last
/// entry). Every weight must lie strictly inside (r_minus, r_plus).
struct StepSchedule {
  double r_minus = 0.1;
  double r_plus = 10.0;
  std::variant<double, std::vector<double>> lambda{1.0};
  std::variant<double, std::vector<double>> mu{1.0};

  static StepSchedule constant(double lambda, double mu, double r_minus = 0.1,
                               double r_plus = 10.0);

  double lambda_at(long k) const;
  double mu_at(long k) const;
  void validate() const;
};

/// The constant of the step-to-residual bound
///   ||V_k||^2 <= rho ( ||dx_k||^2 + ||dy_k||^2 ),
/// rho = max( 2/r_minus^2 , 2 C^2 + 1/r_minus^2 ).
struct ResidualBoundParams {
  double rho;
  double lipschitz_c;

  ResidualBoundParams(double r_minus, double lipschitz_c_in);
};

}  // namespace apmin
