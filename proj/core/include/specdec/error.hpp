#pragma once

#include <stdexcept>
#include <string>

namespace specdec {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structure declaration violates an invariant (inconsistent identification,
/// non-injective cell map, disconnected level-1 graph, ...).
class MalformedStructureError : public Error {
public:
  using Error::Error;
};

/// Rational-function evaluation at a root of the denominator.
class PoleError : public Error {
public:
  using Error::Error;
};

/// Division by the zero polynomial or zero rational function.
class DivisionByZeroError : public Error {
public:
  using Error::Error;
};

/// A matrix over the rational-function field has identically zero determinant.
class SingularMatrixError : public Error {
public:
  using Error::Error;
};

/// Schur complement lacks the equal-diagonal / equal-off-diagonal shape.
class NotFullySymmetricError : public Error {
public:
  using Error::Error;
};

/// Extracted decimation data violates R(0)=0 or R'(0)>1.
class DegenerateStructureError : public Error {
public:
  using Error::Error;
};

/// Eigenvector extension requested at a value too close to sigma(D_n).
class ExceptionalValueError : public Error {
public:
  using Error::Error;
};

/// An independent oracle disagrees with the primary computation.
class CrossCheckError : public Error {
public:
  using Error::Error;
};

/// Operation requires a regular harmonic structure (r < 1).
class NonRegularError : public Error {
public:
  using Error::Error;
};

/// Scaled iterates failed to converge within the iteration cap.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// No hull candidate satisfies the preimage containment.
class HullError : public Error {
public:
  using Error::Error;
};

/// Unreadable or invalid configuration / definition file.
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace specdec
