#pragma once

#include <stdexcept>
#include <string>

namespace sine_moments {

/// Base class for numeric failures. The CLI maps these to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument lies on (or within tolerance of) a pole.
class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A divisor table does not reach far enough for the requested query.
class SieveTooSmall : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Allocation would exceed the configured memory budget.
class MemoryBudgetError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Quadratic-cost operation refused above its size guard.
class TooLarge : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Shift parameters coincide where a formula has a pole.
class CoalescenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Quadrature node count would pass the policy budget.
class BudgetExceeded : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Sieve cache with wrong magic, version or checksum.
class FormatError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Sieve cache shorter than its header promises.
class TruncationError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace sine_moments
