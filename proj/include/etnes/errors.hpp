#pragma once

#include <stdexcept>
#include <string>

namespace etnes {

/// A configuration value broke one of the library's invariants. `field` names
/// the offending input, `rule` the violated constraint.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, std::string rule)
      : std::invalid_argument(field + ": " + rule),
        field_(std::move(field)),
        rule_(std::move(rule)) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string field_;
  std::string rule_;
};

/// Raised when a closed-loop integration cannot continue (non-finite state or
/// the Riccati ceiling was crossed).
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace etnes
