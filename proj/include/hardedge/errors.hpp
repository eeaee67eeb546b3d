#ifndef HARDEDGE_ERRORS_HPP
#define HARDEDGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hardedge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument sits on (or within rounding of) a pole of the function.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the numerical envelope the implementation supports.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A truncated series or quadrature did not reach its target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A computed result failed its built-in accuracy check.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Determinant numerically zero (pivot underflow or lost positivity).
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// ProcessParams violate one of their invariants.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

}  // namespace hardedge

#endif  // HARDEDGE_ERRORS_HPP
