#pragma once

#include <stdexcept>
#include <string>

namespace toric {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible rank.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Zero vectors, empty generator lists and similar degenerate input.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// The cone contains a line. `lineality()` holds a nonzero vector v with
/// both v and -v in the cone, as text so this header stays dependency free.
class NotPointedError : public Error {
 public:
  NotPointedError(const std::string& what, std::string lineality)
      : Error(what), lineality_(std::move(lineality)) {}
  const std::string& lineality() const noexcept { return lineality_; }

 private:
  std::string lineality_;
};

/// An operation needing a full-dimensional cone received a lower-dimensional one.
class NotFullError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside an operation's domain (nonpositive exponents, the zero
/// face, points outside the semigroup, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A structural hypothesis of the operation fails (e.g. non-simplicial cone).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Indicates a bug, never bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace toric
