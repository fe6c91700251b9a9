#pragma once

#include <stdexcept>
#include <string>

namespace awlssvm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix dimensions, view counts, or feature widths.
class InputShapeError : public Error {
 public:
  using Error::Error;
};

/// NaN or infinite values where finite numbers are required.
class NumericInputError : public Error {
 public:
  using Error::Error;
};

/// A label vector that cannot form a binary subproblem (single class, missing class).
class DegenerateLabelsError : public Error {
 public:
  using Error::Error;
};

/// The bordered linear system could not be solved to a finite answer.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// Invalid argument or configuration value.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Dataset files or manifest contents fail validation.
class DatasetError : public Error {
 public:
  using Error::Error;
};

class StratificationError : public Error {
 public:
  using Error::Error;
};

class AllocationError : public Error {
 public:
  using Error::Error;
};

}  // namespace awlssvm
