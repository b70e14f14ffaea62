#pragma once

#include <stdexcept>
#include <string>

namespace fpt {

/// Base class for every numerical failure raised by the library. The CLI maps
/// these to exit status 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public NumericalError {
 public:
  explicit DomainError(const std::string& what) : NumericalError(what) {}
};

/// An iterative method ran out of its iteration budget.
class ConvergenceError : public NumericalError {
 public:
  explicit ConvergenceError(const std::string& what) : NumericalError(what) {}
};

/// Adaptive quadrature could not reach the requested tolerance. Carries the
/// best estimate found so callers can decide whether it is usable.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double estimate, double abs_error)
      : NumericalError(what), estimate_(estimate), abs_error_(abs_error) {}

  double estimate() const noexcept { return estimate_; }
  double abs_error() const noexcept { return abs_error_; }

 private:
  double estimate_;
  double abs_error_;
};

/// A truncated series whose tail bound exceeds the configured tolerance.
class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, double tail_bound)
      : NumericalError(what), tail_bound_(tail_bound) {}

  double tail_bound() const noexcept { return tail_bound_; }

 private:
  double tail_bound_;
};

}  // namespace fpt
