#pragma once

#include <cassert>
#include <cmath>
#include <limits>

namespace apmin {

/// Value of an extended-real-valued function. Finiteness is tracked as an
/// explicit flag so that emitted records render "inf" as a parseable literal
/// instead of depending on platform float formatting. Internal arithmetic is
/// free to use IEEE +infinity; this type only lives in records and logs.
class ExtReal {
 public:
  ExtReal() : value_(0.0), finite_(true) {}
  ExtReal(double v)  // NOLINT: intentionally implicit
      : value_(v), finite_(std::isfinite(v)) {
    assert(!std::isnan(v));
  }

  static ExtReal infinity() {
    return ExtReal(std::numeric_limits<double>::infinity());
  }

  bool finite() const { return finite_; }

  /// The finite value; only meaningful when finite().
  double value() const {
    assert(finite_);
    return value_;
  }

  /// IEEE view: the value, or +/-inf.
  double as_double() const {
    return finite_ ? value_
                   : std::copysign(std::numeric_limits<double>::infinity(),
                                   value_);
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.as_double() == b.as_double();
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) {
    return a.as_double() <= b.as_double();
  }

 private:
  double value_;
  bool finite_;
};

}  // namespace apmin
