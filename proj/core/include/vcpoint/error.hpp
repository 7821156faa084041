#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vcpoint {

enum class ErrorCode {
  NotSkew,
  Degenerate,
  InvalidRotation,
  InvalidParameter,
  TargetCollision,
  InfeasibleGeometry,
  SingularAttitude,
  SingularSystem,
  DimensionMismatch,
  PolicyFailure,
  InfeasibleEncountered,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type raised by every vcpoint operation. The code identifies the
/// failure class; the message carries the offending values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vcpoint
