#pragma once

#include <stdexcept>
#include <string>

namespace nongauss {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the validated domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series hit its term cap before the stopping rule fired.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A probability vector or coefficient list is not normalized.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// A quantity needed as a divisor vanished numerically.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The requested measure is not available for the given state family.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace nongauss
