#pragma once

#include <stdexcept>
#include <string>

namespace lastmile {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance or plan document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed document that breaks an instance invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Total demand does not fit into the available vehicles.
class InfeasibleFleet : public Error {
 public:
  using Error::Error;
};

class UnknownNodeError : public Error {
 public:
  explicit UnknownNodeError(int id)
      : Error("unknown customer node id " + std::to_string(id)), id_(id) {}

  int id() const noexcept { return id_; }

 private:
  int id_;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace lastmile
