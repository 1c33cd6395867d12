#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cellaoi {

/// Machine-readable failure codes shared by every module.
enum class ErrorCode {
  // parameter validation
  AlphaTooSmall,
  NonPositiveDensity,
  DensityOrder,
  DensityRatioLow,  // warning only
  ProbabilityOutOfRange,
  NonPositiveDistance,
  NonPositivePower,
  NonPositiveThreshold,
  NonPositiveBandwidth,
  JmRadiusInvalid,
  JmRadiusInfinite,
  InvalidParams,
  // numerics
  DomainError,
  NonConvergent,
  ToleranceNotMet,
  NoConvergence,
  // cell statistics
  DegenerateMoments,
  ZeroOccupancy,
  NonIntegrable,
  // analytics
  SchedulerSaturated,
  // simulation
  EmptyTypicalCell,
  DegenerateSamples,
  // configuration
  ParseError,
  UnknownKey,
  UnknownParam,
  InvalidValue,
};

/// Stable upper-snake name, e.g. "ALPHA_TOO_SMALL".
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// The message without the "CODE: " prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace cellaoi
