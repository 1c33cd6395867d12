#pragma once

#include "cellaoi/numerics/quadrature.hpp"

namespace cellaoi::numerics {

/// sin(pi*delta)/(pi*delta) for delta in (0,1).
double sinc_delta(double delta);

/// Regularized lower incomplete gamma gamma(s,x)/Gamma(s); s > 0, x >= 0.
double lower_incomplete_gamma(double s, double x);
/// Unnormalized lower incomplete gamma gamma(s,x) = int_0^x t^{s-1} e^{-t} dt.
double lower_incomplete_gamma_unnormalized(double s, double x);

/// Generalized binomial coefficient prod_{j<k}(b-j)/k!, with (b choose 0) = 1.
double gen_binomial(double b, int k);

struct SeriesOptions {
  double rel_tol = 1e-12;
  int max_terms = 100000;
  /// For b < 0 the series result is cross-checked against the radial integral;
  /// a relative discrepancy above this aborts with NONCONVERGENT.
  double integral_check_tol = 1e-6;
};

/// Meta-distribution interference constant
///   C(b) = theta^delta / sinc(delta) * sum_{k>=1} (b choose k)(delta-1 choose k-1) zeta^k,
/// where theta = beta_b * p_d / p_b. For a positive integer b the sum is finite.
double series_C(double b, double zeta, double delta, double theta, const SeriesOptions& opts = {});

/// The same constant as the radial integral
///   int_0^inf [1 - (1 - zeta/(1 + r^alpha/theta))^b] 2r dr,   alpha = 2/delta.
double series_C_integral(double b, double zeta, double delta, double theta,
                         const QuadratureSpec& spec = {});

}  // namespace cellaoi::numerics
