#pragma once

#include <stdexcept>
#include <string>

namespace joinopt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was broken by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input whose values break a query-graph invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds what an exact optimizer can represent.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The algorithm requires a topology the input does not have (e.g. a tree).
class TopologyError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public Error {
 public:
  using Error::Error;
};

/// The memo does not hold an entry the caller relied on.
class IncompleteMemoError : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace joinopt
