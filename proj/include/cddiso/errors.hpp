#pragma once

#include <stdexcept>
#include <string>

namespace cddiso {

/// Precondition violated by an argument value (v outside [0,1], t outside a
/// support, and so on).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The m = 0 indicator regime reached an operation that needs m > 0.
class DegenerateDimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Invalid parameter combination for the curvature-dimension-diameter
/// condition (for example m = n + q - 1 <= 0).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive integration did not reach its tolerance inside the evaluation
/// budget, or the integrand was not finite.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double best_estimate, double error_bound)
      : NumericalError(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const { return best_estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

/// The balance equation has no solution because one side of the window
/// carries no mass for any shift.
class BalanceError : public NumericalError {
 public:
  enum class Side { kLeft, kRight };

  BalanceError(const std::string& what, Side side) : NumericalError(what), side_(side) {}
  Side side() const { return side_; }

 private:
  Side side_;
};

/// The minimization bracket kept growing without enclosing a minimum.
class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A brute-force mass target cannot be met on the requested grid.
class InfeasibleMassError : public NumericalError {
 public:
  InfeasibleMassError(const std::string& what, double lo, double hi)
      : NumericalError(what), achievable_lo_(lo), achievable_hi_(hi) {}

  double achievable_lo() const { return achievable_lo_; }
  double achievable_hi() const { return achievable_hi_; }

 private:
  double achievable_lo_;
  double achievable_hi_;
};

}  // namespace cddiso
