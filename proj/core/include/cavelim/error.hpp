#pragma once

#include <stdexcept>
#include <string>

namespace cavelim {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands with mismatched dimension or tensor-factor structure.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A model, parameter set or SystemSpec that violates its invariants.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Singular, ill-conditioned or non-converging linear algebra.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// The generator has more than one linearly independent steady state.
class DegenerateSteadyStateError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// A request that exceeds a configured memory/runtime budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Adaptive time stepping failed; carries the time at which it gave up.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double time)
      : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace cavelim
