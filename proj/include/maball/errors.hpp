#pragma once

#include <stdexcept>
#include <string>

namespace maball {

// Bad user-facing input: dimensions, ranges, unparseable config.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class LinearSolveError : public std::runtime_error {
 public:
  LinearSolveError(const std::string& what, double achieved_residual)
      : std::runtime_error(what), achieved_residual(achieved_residual) {}
  double achieved_residual;
};

// Recoverable signals from the Newton iteration; the continuation driver
// reacts by shrinking the step, callers may also catch them directly.
class NewtonError : public std::runtime_error {
 public:
  enum class Kind { Stalled, EllipticityLost };
  NewtonError(Kind kind, const std::string& what, double residual)
      : std::runtime_error(what), kind(kind), residual(residual) {}
  Kind kind;
  double residual;
};

class ContinuationError : public std::runtime_error {
 public:
  enum class Kind { Stalled, HypothesisViolated };
  ContinuationError(Kind kind, const std::string& what, double t_reached)
      : std::runtime_error(what), kind(kind), t_reached(t_reached) {}
  Kind kind;
  double t_reached;
};

}  // namespace maball
