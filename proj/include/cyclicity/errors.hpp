#pragma once

#include <stdexcept>
#include <string>

namespace cyc {

// Precondition violations. The CLI maps these to exit status 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Degree or length beyond a precomputed table.
class RangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Zero function where a nonzero one is required.
class DegenerateInputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Power-series inversion of a series with vanishing constant term.
class SingularInversionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical failures. The CLI maps these to exit status 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConditioningError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace cyc
