#include "sel/error.hpp"

#include <cstdio>

namespace sel {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}


std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kNonConvergent: return "NonConvergent";
    case ErrorCode::kSingularityOutOfDomain: return "SingularityOutOfDomain";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::kStepTooLarge: return "StepTooLarge";
    case ErrorCode::kDegenerateParams: return "DegenerateParams";
    case ErrorCode::kNearSingularSystem: return "NearSingularSystem";
    case ErrorCode::kNotPhaseSymmetric: return "NotPhaseSymmetric";
    case ErrorCode::kNormalizationFailed: return "NormalizationFailed";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "UnknownError";
}

}  // namespace sel
