#include "vcpoint/error.hpp"

namespace vcpoint {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::InvalidRotation: return "InvalidRotation";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::TargetCollision: return "TargetCollision";
    case ErrorCode::InfeasibleGeometry: return "InfeasibleGeometry";
    case ErrorCode::SingularAttitude: return "SingularAttitude";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PolicyFailure: return "PolicyFailure";
    case ErrorCode::InfeasibleEncountered: return "InfeasibleEncountered";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace vcpoint
