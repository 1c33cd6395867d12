#include "cellaoi/numerics/special.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

namespace cellaoi::numerics {

double sinc_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw Error(ErrorCode::DomainError, "sinc_delta: delta must lie in (0,1), got " + std::to_string(delta));
  const double x = std::numbers::pi * delta;
  return std::sin(x) / x;
}

double lower_incomplete_gamma(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0))
    throw Error(ErrorCode::DomainError, "lower_incomplete_gamma: need s > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(s, x);
}

double lower_incomplete_gamma_unnormalized(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0))
    throw Error(ErrorCode::DomainError, "lower_incomplete_gamma: need s > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::tgamma(s);
  return boost::math::tgamma_lower(s, x);
}

double gen_binomial(double b, int k) {
  if (k < 0) throw Error(ErrorCode::DomainError, "gen_binomial: k must be non-negative");
  double c = 1.0;
  for (int j = 0; j < k; ++j) c *= (b - j) / (j + 1);
  return c;
}

double series_C(double b, double zeta, double delta, double theta, const SeriesOptions& opts) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::DomainError, "series_C: delta must lie in (0,1)");
  if (!(theta > 0.0)) throw Error(ErrorCode::DomainError, "series_C: theta must be positive");
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw Error(ErrorCode::DomainError, "series_C: zeta must lie in [0,1]");
  if (b < 0.0 && !(zeta < 1.0))
    throw Error(ErrorCode::DomainError, "series_C: zeta must be < 1 for negative b");
  if (zeta == 0.0 || b == 0.0) return 0.0;

  const double prefactor = std::pow(theta, delta) / sinc_delta(delta);
  const bool finite_sum = b > 0.0 && b == std::floor(b);

  // t_1 = b * zeta; t_{k+1}/t_k = (b-k)(delta-k) zeta / (k (k+1))
  double term = b * zeta;
  double sum = term;
  int k = 1;
  for (;; ++k) {
    const double ratio = (b - k) * (delta - k) * zeta / (static_cast<double>(k) * (k + 1));
    if (finite_sum && k >= b) break;
    const double next = term * ratio;
    // |ratio| tends to zeta monotonically, so max(|ratio|, zeta) bounds the
    // ratio of every later term and the tail is dominated by a geometric series
    const double abs_ratio = std::max(std::abs(ratio), zeta);
    if (!finite_sum && abs_ratio < 1.0) {
      const double tail = std::abs(next) / (1.0 - abs_ratio);
      if (tail <= opts.rel_tol * std::abs(sum)) {
        sum += next;
        break;
      }
    }
    term = next;
    sum += term;
    if (k + 1 >= opts.max_terms)
      throw Error(ErrorCode::NonConvergent, "series_C: term cap reached before tolerance (b=" +
                                                std::to_string(b) + ", zeta=" + std::to_string(zeta) + ")");
  }
  const double value = prefactor * sum;

  if (b < 0.0) {
    const double check = series_C_integral(b, zeta, delta, theta);
    if (std::abs(check - value) > opts.integral_check_tol * std::abs(value))
      throw Error(ErrorCode::NonConvergent, "series_C: series " + std::to_string(value) +
                                                " disagrees with radial integral " + std::to_string(check));
  }
  return value;
}

double series_C_integral(double b, double zeta, double delta, double theta, const QuadratureSpec& spec) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::DomainError, "series_C_integral: bad delta");
  if (b < 0.0 && !(zeta < 1.0))
    throw Error(ErrorCode::DomainError, "series_C_integral: zeta must be < 1 for negative b");
  if (zeta == 0.0 || b == 0.0) return 0.0;
  const double alpha = 2.0 / delta;
  // r = theta^{1/alpha} * rho makes the integrand dimensionless
  auto f = [&](double rho) {
    const double y = zeta / (1.0 + std::pow(rho, alpha));
    return -std::expm1(b * std::log1p(-y)) * 2.0 * rho;
  };
  auto s = spec;
  s.rel_tol = std::min(spec.rel_tol, 1e-10);
  const double head = integrate_1d(f, 0.0, 1.0, s).value;
  const double tail = integrate_1d(f, 1.0, std::numeric_limits<double>::infinity(), s).value;
  return std::pow(theta, delta) * (head + tail);
}

}  // namespace cellaoi::numerics
