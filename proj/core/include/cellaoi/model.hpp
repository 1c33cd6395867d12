#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cellaoi/error.hpp"

namespace cellaoi {

enum class AccessMode { CoChannel, Orthogonal };

std::string_view to_string(AccessMode mode) noexcept;

/// System parameters of the network. All values are linear (no dB); powers are
/// in mW but only p_b / p_d enters any result.
struct NetworkParams {
  double lambda_b = 1e-4;  ///< BS density [1/m^2]
  double lambda_d = 2e-3;  ///< device density [1/m^2]
  double q_d = 0.3;        ///< D2D medium-access probability
  double r_d = 2.0;        ///< D2D link distance [m]
  double alpha = 4.0;      ///< path-loss exponent
  double epsilon = 0.0;    ///< fractional power-control exponent
  double p_b = 1e10;       ///< baseline update power [mW] (100 dBm)
  double p_d = 1e10;       ///< D2D power [mW] (100 dBm)
  std::optional<double> p_max;  ///< maximum device power [mW], informational once J is set
  double jm_radius = 40.0;      ///< JM cell radius J [m]
  double beta_b = 1.9952623149688795;  ///< update SIR threshold (3 dB)
  double beta_d = 1.0;                 ///< D2D SIR threshold (0 dB)
  double bandwidth = 200e3;            ///< [Hz]
  AccessMode access_mode = AccessMode::CoChannel;

  double delta() const noexcept { return 2.0 / alpha; }
  /// p_b / p_d
  double power_ratio() const noexcept { return p_b / p_d; }
  /// Density of devices not scheduled for updates, lambda_d - lambda_b.
  double lambda_d_prime() const noexcept { return lambda_d - lambda_b; }
  double density_ratio() const noexcept { return lambda_d / lambda_b; }
  /// F(x) = 1 - exp(-pi lambda_b x^2); F(J) is the fraction of devices with update support.
  double coverage_at(double x) const noexcept;
  double coverage() const noexcept { return coverage_at(jm_radius); }
};

struct ValidationIssue {
  ErrorCode code;
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;

  bool ok() const noexcept { return errors.empty(); }
  bool has_error(ErrorCode code) const noexcept;
  bool has_warning(ErrorCode code) const noexcept;
  /// All error messages joined with "; ".
  std::string summary() const;
};

/// Collects every violated invariant rather than stopping at the first.
ValidationReport validate(const NetworkParams& params);

/// Throws Error(InvalidParams) listing every violation when validation fails.
void require_valid(const NetworkParams& params);

/// J = (p_max / p_b)^(1/(alpha*epsilon)). For epsilon == 0 the budget is either
/// always met (+inf) or never met (0).
double jm_radius_from_power(double p_max, double p_b, double alpha, double epsilon);

double db_to_linear(double db) noexcept;
double linear_to_db(double linear) noexcept;

}  // namespace cellaoi
