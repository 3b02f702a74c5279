#pragma once

#include <stdexcept>
#include <string>

namespace cbs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (non-unit direction, non-positive distance, malformed grid, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The inputs leave the regime in which the second-order expansion in the
/// saturation parameter is meaningful.
class ValidityError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach its requested accuracy.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration; `field()` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cbs
