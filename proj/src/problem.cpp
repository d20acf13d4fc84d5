#include "apmin/problem.hpp"

#include <cmath>
#include <limits>

#include "apmin/errors.hpp"

namespace apmin {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

BiFunctionProblem::BiFunctionProblem(std::shared_ptr<const ProxFunction> f,
                                     std::shared_ptr<const ProxFunction> g,
                                     std::shared_ptr<const Coupling> q,
                                     Eigen::Index n, Eigen::Index m,
                                     double lower_bound)
    : f_(std::move(f)),
      g_(std::move(g)),
      q_(std::move(q)),
      n_(n),
      m_(m),
      lower_bound_(lower_bound) {
  if (!f_ || !g_ || !q_) throw ConfigError("BiFunctionProblem: null oracle");
  if (n_ <= 0 || m_ <= 0) throw ConfigError("BiFunctionProblem: bad dimensions");
  if (f_->dimension() != -1 && f_->dimension() != n_) {
    throw ConfigError("BiFunctionProblem: f dimension != n");
  }
  if (g_->dimension() != -1 && g_->dimension() != m_) {
    throw ConfigError("BiFunctionProblem: g dimension != m");
  }
  if (!std::isfinite(lower_bound_)) {
    throw ConfigError(
        "BiFunctionProblem: a finite lower bound on L is required");
  }
  // Properness probes: the prox of each block function lands in its domain.
  ProxResult pf = f_->prox(Vec::Zero(n_), 1.0);
  if (!std::isfinite(f_->value(pf.point))) {
    throw ConfigError("BiFunctionProblem: f appears improper (empty domain)");
  }
  ProxResult pg = g_->prox(Vec::Zero(m_), 1.0);
  if (!std::isfinite(g_->value(pg.point))) {
    throw ConfigError("BiFunctionProblem: g appears improper (empty domain)");
  }
}

double eval_L(const BiFunctionProblem& problem, const ProductPoint& z) {
  if (z.n() != problem.n() || z.m() != problem.m()) {
    throw ConfigError("eval_L: point dimensions do not match the problem");
  }
  double fv = problem.f().value(z.x);
  if (fv == kInf) return kInf;
  double gv = problem.g().value(z.y);
  if (gv == kInf) return kInf;
  return fv + problem.q().value(z.x, z.y) + gv;
}

Vec residual_vector(const BiFunctionProblem& problem,
                    const ProductPoint& z_prev, const ProductPoint& z_next,
                    double lambda, double mu) {
  if (z_prev.n() != problem.n() || z_prev.m() != problem.m() ||
      z_next.n() != problem.n() || z_next.m() != problem.m()) {
    throw ConfigError("residual_vector: dimension mismatch");
  }
  Vec vx = (z_prev.x - z_next.x) / lambda +
           problem.q().grad_x(z_next.x, z_next.y) -
           problem.q().grad_x(z_next.x, z_prev.y);
  Vec vy = (z_prev.y - z_next.y) / mu;
  Vec out(problem.n() + problem.m());
  out << vx, vy;
  return out;
}

double check_gradient(const BiFunctionProblem& problem, const ProductPoint& z,
                      double h) {
  const Coupling& q = problem.q();
  Vec gx = q.grad_x(z.x, z.y);
  Vec gy = q.grad_y(z.x, z.y);
  double worst = 0.0;
  Vec xp = z.x, xm = z.x;
  for (Eigen::Index i = 0; i < z.n(); ++i) {
    xp(i) += h;
    xm(i) -= h;
    double fd = (q.value(xp, z.y) - q.value(xm, z.y)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - gx(i)) / std::max(1.0, std::abs(gx(i))));
    xp(i) = z.x(i);
    xm(i) = z.x(i);
  }
  Vec yp = z.y, ym = z.y;
  for (Eigen::Index i = 0; i < z.m(); ++i) {
    yp(i) += h;
    ym(i) -= h;
    double fd = (q.value(z.x, yp) - q.value(z.x, ym)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - gy(i)) / std::max(1.0, std::abs(gy(i))));
    yp(i) = z.y(i);
    ym(i) = z.y(i);
  }
  return worst;
}

StepSchedule StepSchedule::constant(double lambda, double mu, double r_minus,
                                    double r_plus) {
  StepSchedule s;
  s.r_minus = r_minus;
  s.r_plus = r_plus;
  s.lambda = lambda;
  s.mu = mu;
  s.validate();
  return s;
}

namespace {

double schedule_value(const std::variant<double, std::vector<double>>& v,
                      long k) {
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  const auto& table = std::get<std::vector<double>>(v);
  std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(k),
                                        table.size() - 1);
  return table[i];
}

void check_entry(double w, double r_minus, double r_plus, const char* which) {
  if (!(w > r_minus && w < r_plus)) {
    throw ConfigError(std::string(which) +
                      " weight must lie strictly inside (r_minus, r_plus)");
  }
}

}  // namespace

double StepSchedule::lambda_at(long k) const {
  double w = schedule_value(lambda, k);
  check_entry(w, r_minus, r_plus, "lambda");
  return w;
}

double StepSchedule::mu_at(long k) const {
  double w = schedule_value(mu, k);
  check_entry(w, r_minus, r_plus, "mu");
  return w;
}

void StepSchedule::validate() const {
  if (!(r_minus > 0.0) || !(r_plus > r_minus)) {
    throw ConfigError("StepSchedule: need 0 < r_minus < r_plus");
  }
  auto check_all = [&](const std::variant<double, std::vector<double>>& v,
                       const char* which) {
    if (std::holds_alternative<double>(v)) {
      check_entry(std::get<double>(v), r_minus, r_plus, which);
    } else {
      const auto& table = std::get<std::vector<double>>(v);
      if (table.empty()) {
        throw ConfigError("StepSchedule: empty weight table");
      }
      for (double w : table) check_entry(w, r_minus, r_plus, which);
    }
  };
  check_all(lambda, "lambda");
  check_all(mu, "mu");
}

ResidualBoundParams::ResidualBoundParams(double r_minus, double lipschitz_c_in)
    : rho(0.0), lipschitz_c(lipschitz_c_in) {
  if (!(r_minus > 0.0)) throw ConfigError("ResidualBoundParams: r_minus <= 0");
  if (!(lipschitz_c >= 0.0)) {
    throw ConfigError("ResidualBoundParams: negative Lipschitz constant");
  }
  double inv2 = 1.0 / (r_minus * r_minus);
  rho = std::max(2.0 * inv2, 2.0 * lipschitz_c * lipschitz_c + inv2);
}

}  // namespace apmin
