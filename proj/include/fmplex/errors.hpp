#pragma once

#include <stdexcept>
#include <string>

namespace fmplex {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedTerm : public Error {
 public:
  using Error::Error;
};

/// bound_rewrite on a row whose coefficient for the variable is zero.
class NotABound : public Error {
 public:
  using Error::Error;
};

class IncompleteAssignment : public Error {
 public:
  using Error::Error;
};

/// A designee that does not satisfy the restricted projection precondition.
class InvalidDesignee : public Error {
 public:
  using Error::Error;
};

/// A row whose provenance support minus the non-basis is not a singleton.
/// Signals a broken invariant in the search, never bad input.
class MappingViolation : public Error {
 public:
  using Error::Error;
};

class ScriptError : public Error {
 public:
  using Error::Error;
};

class InvalidPivot : public Error {
 public:
  using Error::Error;
};

}  // namespace fmplex
