#include "cellaoi/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace cellaoi {

std::string_view to_string(AccessMode mode) noexcept {
  return mode == AccessMode::CoChannel ? "co-channel" : "orthogonal";
}

double NetworkParams::coverage_at(double x) const noexcept {
  return -std::expm1(-std::numbers::pi * lambda_b * x * x);
}

bool ValidationReport::has_error(ErrorCode code) const noexcept {
  for (const auto& e : errors)
    if (e.code == code) return true;
  return false;
}

bool ValidationReport::has_warning(ErrorCode code) const noexcept {
  for (const auto& w : warnings)
    if (w.code == code) return true;
  return false;
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& e : errors) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(e.code)) + " (" + e.field + "): " + e.message;
  }
  return out;
}

namespace {

constexpr double kLowDensityRatio = 5.0;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

ValidationReport validate(const NetworkParams& p) {
  ValidationReport r;
  auto error = [&](ErrorCode c, std::string field, std::string msg) {
    r.errors.push_back({c, std::move(field), std::move(msg)});
  };

  if (!(p.alpha > 2.0) || !std::isfinite(p.alpha))
    error(ErrorCode::AlphaTooSmall, "alpha", "path-loss exponent must exceed 2");

  bool densities_ok = true;
  if (!positive_finite(p.lambda_b)) {
    error(ErrorCode::NonPositiveDensity, "lambda_b", "BS density must be positive");
    densities_ok = false;
  }
  if (!positive_finite(p.lambda_d)) {
    error(ErrorCode::NonPositiveDensity, "lambda_d", "device density must be positive");
    densities_ok = false;
  }
  if (densities_ok) {
    if (p.lambda_d < p.lambda_b) {
      error(ErrorCode::DensityOrder, "lambda_d", "device density must not be below BS density");
    } else if (p.lambda_d / p.lambda_b < kLowDensityRatio) {
      r.warnings.push_back({ErrorCode::DensityRatioLow, "lambda_d",
                            "lambda_d/lambda_b below 5; empty cells become likely"});
    }
  }

  if (!(p.q_d >= 0.0 && p.q_d <= 1.0))
    error(ErrorCode::ProbabilityOutOfRange, "q_d", "must lie in [0,1]");
  if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0))
    error(ErrorCode::ProbabilityOutOfRange, "epsilon", "must lie in [0,1]");

  if (!positive_finite(p.r_d)) error(ErrorCode::NonPositiveDistance, "r_d", "must be positive");
  if (!positive_finite(p.p_b)) error(ErrorCode::NonPositivePower, "p_b", "must be positive");
  if (!positive_finite(p.p_d)) error(ErrorCode::NonPositivePower, "p_d", "must be positive");
  if (p.p_max && !positive_finite(*p.p_max))
    error(ErrorCode::NonPositivePower, "p_max", "must be positive");
  if (!positive_finite(p.beta_b))
    error(ErrorCode::NonPositiveThreshold, "beta_b", "must be positive");
  if (!positive_finite(p.beta_d))
    error(ErrorCode::NonPositiveThreshold, "beta_d", "must be positive");
  if (!positive_finite(p.bandwidth))
    error(ErrorCode::NonPositiveBandwidth, "bandwidth", "must be positive");

  if (std::isinf(p.jm_radius) && p.jm_radius > 0) {
    error(ErrorCode::JmRadiusInfinite, "jm_radius",
          "J = inf makes the negative moments M_{-n} (and the AoI moments) unbounded; "
          "supply a finite JM radius");
  } else if (!positive_finite(p.jm_radius)) {
    error(ErrorCode::JmRadiusInvalid, "jm_radius", "must be positive and finite");
  }
  return r;
}

void require_valid(const NetworkParams& params) {
  auto report = validate(params);
  if (!report.ok()) throw Error(ErrorCode::InvalidParams, report.summary());
}

double jm_radius_from_power(double p_max, double p_b, double alpha, double epsilon) {
  if (!(p_max > 0.0) || !(p_b > 0.0))
    throw Error(ErrorCode::DomainError, "jm_radius_from_power: powers must be positive");
  if (!(alpha > 2.0))
    throw Error(ErrorCode::DomainError, "jm_radius_from_power: alpha must exceed 2");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw Error(ErrorCode::DomainError, "jm_radius_from_power: epsilon must lie in [0,1]");
  if (epsilon == 0.0)
    return p_max >= p_b ? std::numeric_limits<double>::infinity() : 0.0;
  return std::pow(p_max / p_b, 1.0 / (alpha * epsilon));
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) noexcept { return 10.0 * std::log10(linear); }

}  // namespace cellaoi
