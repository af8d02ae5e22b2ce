#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace repnet {

/// Raised when a parameter, grid or state violates its documented range.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the configuration parser; carries the 1-based line number
/// of the offending line (0 when the error is not tied to one line).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& msg)
      : std::runtime_error(line == 0 ? msg : "line " + std::to_string(line) + ": " + msg),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised when the adaptive integrator cannot make progress.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& msg, double t, std::vector<double> state)
      : std::runtime_error(msg + " at t=" + std::to_string(t)), t_(t), state_(std::move(state)) {}

  double time() const noexcept { return t_; }
  const std::vector<double>& state() const noexcept { return state_; }

 private:
  double t_;
  std::vector<double> state_;
};

}  // namespace repnet
