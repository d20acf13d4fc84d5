#include "apmin/scalar_minimize.hpp"

#include <cmath>
#include <limits>

#include "apmin/errors.hpp"

namespace apmin {

double golden_section_min(const std::function<double(double)>& fn, double lo,
                          double hi, double xtol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c), fd = fn(d);
  while (b - a > xtol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  return 0.5 * (a + b);
}

double brute_force_prox(const std::function<double(double)>& f, double point,
                        double weight, double lo, double hi, int grid) {
  if (!(weight > 0.0)) throw ConfigError("brute_force_prox: weight must be > 0");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ConfigError("brute_force_prox: domain must be a compact interval");
  }
  if (grid < 1000) throw ConfigError("brute_force_prox: grid must be >= 1000");

  auto objective = [&](double u) {
    double d = u - point;
    return f(u) + d * d / (2.0 * weight);
  };

  double best_u = 0.0;
  double best_v = std::numeric_limits<double>::infinity();
  const double h = (hi - lo) / (grid - 1);
  for (int i = 0; i < grid; ++i) {
    double u = lo + i * h;
    double v = objective(u);
    if (v < best_v) {
      best_v = v;
      best_u = u;
    }
  }
  if (!std::isfinite(best_v)) {
    throw Error("brute_force_prox: empty effective domain on the grid");
  }

  double a = std::max(lo, best_u - h);
  double b = std::min(hi, best_u + h);
  return golden_section_min(objective, a, b, 1e-10);
}

}  // namespace apmin
