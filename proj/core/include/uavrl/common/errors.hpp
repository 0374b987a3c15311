#pragma once

#include <stdexcept>
#include <string>

namespace uavrl {

/// Invalid or unparseable configuration value. Carries the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Operation invoked in a state that does not permit it (e.g. stepping a finished episode).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Non-finite value detected inside a numerical routine.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uavrl
