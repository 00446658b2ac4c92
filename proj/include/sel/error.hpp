#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sel {

enum class ErrorCode {
  kSingularMatrix,
  kNonConvergent,
  kSingularityOutOfDomain,
  kDomainError,
  kDimensionMismatch,
  kTruncationTooSmall,
  kStepTooLarge,
  kDegenerateParams,
  kNearSingularSystem,
  kNotPhaseSymmetric,
  kNormalizationFailed,
  kConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// %.6g, for numbers quoted in error messages.
std::string num(double v);

/// Base of every failure raised by the library. The code is what callers
/// (the CLI's per-row error columns, exit codes) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

template <ErrorCode C>
class ErrorOf : public Error {
 public:
  explicit ErrorOf(const std::string& what) : Error(C, what) {}
};

using SingularMatrix = ErrorOf<ErrorCode::kSingularMatrix>;
using NonConvergent = ErrorOf<ErrorCode::kNonConvergent>;
using SingularityOutOfDomain = ErrorOf<ErrorCode::kSingularityOutOfDomain>;
using DomainError = ErrorOf<ErrorCode::kDomainError>;
using DimensionMismatch = ErrorOf<ErrorCode::kDimensionMismatch>;
using TruncationTooSmall = ErrorOf<ErrorCode::kTruncationTooSmall>;
using StepTooLarge = ErrorOf<ErrorCode::kStepTooLarge>;
using DegenerateParams = ErrorOf<ErrorCode::kDegenerateParams>;
using NearSingularSystem = ErrorOf<ErrorCode::kNearSingularSystem>;
using NotPhaseSymmetric = ErrorOf<ErrorCode::kNotPhaseSymmetric>;
using NormalizationFailed = ErrorOf<ErrorCode::kNormalizationFailed>;
using ConfigError = ErrorOf<ErrorCode::kConfigError>;

}  // namespace sel
