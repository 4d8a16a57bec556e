#pragma once

#include <stdexcept>
#include <string>

namespace driftlab {

/// Base of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed, inconsistent, or unreadable.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Data is well-formed but carries no variation (e.g. every pooled row identical).
class DegenerateDataError : public DataError {
 public:
  using DataError::DataError;
};

/// Experiment configuration failed schema validation; `field()` names the offending path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace driftlab
