#include "cellaoi/error.hpp"

namespace cellaoi {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AlphaTooSmall: return "ALPHA_TOO_SMALL";
    case ErrorCode::NonPositiveDensity: return "NONPOSITIVE_DENSITY";
    case ErrorCode::DensityOrder: return "DENSITY_ORDER";
    case ErrorCode::DensityRatioLow: return "DENSITY_RATIO_LOW";
    case ErrorCode::ProbabilityOutOfRange: return "PROBABILITY_OUT_OF_RANGE";
    case ErrorCode::NonPositiveDistance: return "NONPOSITIVE_DISTANCE";
    case ErrorCode::NonPositivePower: return "NONPOSITIVE_POWER";
    case ErrorCode::NonPositiveThreshold: return "NONPOSITIVE_THRESHOLD";
    case ErrorCode::NonPositiveBandwidth: return "NONPOSITIVE_BANDWIDTH";
    case ErrorCode::JmRadiusInvalid: return "JM_RADIUS_INVALID";
    case ErrorCode::JmRadiusInfinite: return "JM_RADIUS_INFINITE";
    case ErrorCode::InvalidParams: return "INVALID_PARAMS";
    case ErrorCode::DomainError: return "DOMAIN_ERROR";
    case ErrorCode::NonConvergent: return "NONCONVERGENT";
    case ErrorCode::ToleranceNotMet: return "TOLERANCE_NOT_MET";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::DegenerateMoments: return "DEGENERATE_MOMENTS";
    case ErrorCode::ZeroOccupancy: return "ZERO_OCCUPANCY";
    case ErrorCode::NonIntegrable: return "NONINTEGRABLE";
    case ErrorCode::SchedulerSaturated: return "SCHEDULER_SATURATED";
    case ErrorCode::EmptyTypicalCell: return "EMPTY_TYPICAL_CELL";
    case ErrorCode::DegenerateSamples: return "DEGENERATE_SAMPLES";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::UnknownKey: return "UNKNOWN_KEY";
    case ErrorCode::UnknownParam: return "UNKNOWN_PARAM";
    case ErrorCode::InvalidValue: return "INVALID_VALUE";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

}  // namespace cellaoi
