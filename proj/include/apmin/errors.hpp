#pragma once

#include <stdexcept>
#include <string>

namespace apmin {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad problem setup: dimension mismatch, malformed config, out-of-range
/// parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An exact sub-solve was requested for an (f, Q) structure pairing that is
/// not in the catalog. The message lists the supported pairings.
class NoExactSolverError : public Error {
 public:
  using Error::Error;
};

/// A sub-solver failed at runtime (bad bracket, degenerate system, ...).
/// Carries which block (x or y) was being solved.
class SubSolverError : public Error {
 public:
  SubSolverError(std::string block, const std::string& what)
      : Error("sub-solver failure in " + block + "-block: " + what),
        block_(std::move(block)) {}
  const std::string& block() const { return block_; }

 private:
  std::string block_;
};

/// A diagnostic needs an oracle (e.g. a normal-cone formula) the set does
/// not provide.
class UnsupportedDiagnosticError : public Error {
 public:
  using Error::Error;
};

/// Not enough data points for a statistical fit.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// The per-iteration descent inequality failed beyond slack. This is always
/// a bug: a sub-solver declared exact returned a non-minimizer.
class DescentViolationError : public Error {
 public:
  DescentViolationError(long iteration, const std::string& detail)
      : Error("descent inequality violated at iteration " +
              std::to_string(iteration) + ": " + detail),
        iteration_(iteration) {}
  long iteration() const { return iteration_; }

 private:
  long iteration_;
};

/// SVG emission was asked for a trajectory or sets it cannot draw.
class NotDrawableError : public Error {
 public:
  using Error::Error;
};

}  // namespace apmin
