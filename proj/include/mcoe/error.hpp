#pragma once

#include <stdexcept>
#include <string>

namespace mcoe {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad JSON, bad word token, wrong sizes).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration or ball-size budget would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A configuration was asked for a coordinate outside its domain.
class InsufficientDomain : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition of an operation does not hold.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace mcoe
