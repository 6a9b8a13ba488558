#pragma once

#include <stdexcept>
#include <string>

namespace teleop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Command field outside its quantization range.
class InvalidCommand : public Error {
 public:
  using Error::Error;
};

/// A received byte in the reserved range 240..255. Distinct from transport loss.
class InvalidByte : public Error {
 public:
  using Error::Error;
};

/// Caller broke an API precondition (non-monotone time, bad config).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Vehicle state became non-finite.
class NumericalDivergence : public Error {
 public:
  using Error::Error;
};

/// Scenario or log file could not be parsed or failed validation.
/// `location()` is a JSON pointer ("/gates/2/radius") or "file:line".
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& message)
      : Error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)),
        message_(message) {}

  const std::string& location() const noexcept { return location_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string location_;
  std::string message_;
};

}  // namespace teleop
