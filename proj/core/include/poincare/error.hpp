#pragma once

#include <stdexcept>
#include <string>

namespace poincare {

/// Base of every error raised by the library. The CLI maps subclasses to
/// exit codes: ValidationError and CatalogError are usage errors (2), the
/// rest are run failures (1).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown catalog family or generator name.
class CatalogError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside its documented range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Point outside the domain of a map.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Resolution too coarse to see any interior cell.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling acceptance collapsed.
class DegenerateDomainError : public Error {
 public:
  using Error::Error;
};

/// Eigen solver or optimizer failure.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Measured constants invalidate the construction (eta vanished, all pairs
/// skipped, ...).
class EstimationError : public Error {
 public:
  using Error::Error;
};

}  // namespace poincare
