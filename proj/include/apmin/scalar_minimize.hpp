#pragma once

#include <functional>

namespace apmin {

/// Golden-section search for a minimum of fn on [lo, hi]; shrinks the
/// bracket to width <= xtol and returns its midpoint.
double golden_section_min(const std::function<double(double)>& fn, double lo,
                          double hi, double xtol);

/// Validation oracle: grid minimizer of f(u) + (1/(2 weight)) (u - point)^2
/// over [lo, hi] refined by golden section to width 1e-10. Requires a
/// compact domain and grid >= 1000; throws when every grid value is +inf.
double brute_force_prox(const std::function<double(double)>& f, double point,
                        double weight, double lo, double hi, int grid);

}  // namespace apmin
