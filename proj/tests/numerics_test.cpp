#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "cellaoi/numerics/optimize.hpp"
#include "cellaoi/numerics/quadrature.hpp"
#include "cellaoi/numerics/roots.hpp"
#include "cellaoi/numerics/special.hpp"

using namespace cellaoi::numerics;
using std::numbers::pi;

namespace {

// gamma(s,x)/Gamma(s) from its power series, 50 terms.
double lower_gamma_series(double s, double x) {
  double term = std::pow(x, s) * std::exp(-x) / s, sum = term;
  for (int k = 1; k < 50; ++k) {
    term *= x / (s + k);
    sum += term;
  }
  return sum / std::tgamma(s);
}

// Radial form of C(b) by exp-sinh quadrature on [0, inf); expm1/log1p keep
// the integrand accurate where it is small.
double radial_C(double b, double zeta, double delta, double theta) {
  const double alpha = 2.0 / delta;
  boost::math::quadrature::exp_sinh<double> q;
  auto f = [&](double r) {
    return -std::expm1(b * std::log1p(-zeta / (1.0 + std::pow(r, alpha) / theta))) * 2.0 * r;
  };
  return q.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("sinc_delta") {
  CHECK(sinc_delta(0.5) == doctest::Approx(2.0 / pi).epsilon(1e-14));
  CHECK(std::abs(sinc_delta(1e-8) - 1.0) < 1e-12);
  CHECK(sinc_delta(2.0 / 3.0) == doctest::Approx((std::sqrt(3.0) / 2.0) / (2.0 * pi / 3.0)).epsilon(1e-14));
}

TEST_CASE("lower incomplete gamma") {
  for (double x : {0.1, 1.0, 10.0}) CHECK(std::abs(lower_incomplete_gamma(1.0, x) - (1.0 - std::exp(-x))) < 1e-12);
  CHECK(lower_incomplete_gamma(2.5, 0.0) == 0.0);
  CHECK(std::abs(lower_incomplete_gamma(1.5, 0.5) - lower_gamma_series(1.5, 0.5)) < 1e-12);
  CHECK(lower_incomplete_gamma_unnormalized(1.5, 0.5) ==
        doctest::Approx(lower_gamma_series(1.5, 0.5) * std::tgamma(1.5)).epsilon(1e-12));
}

TEST_CASE("generalized binomial") {
  CHECK(gen_binomial(3.0, 2) == 3.0);
  CHECK(gen_binomial(-1.0, 2) == 1.0);
  CHECK(gen_binomial(0.5, 2) == -0.125);
  CHECK(gen_binomial(7.3, 0) == 1.0);
  CHECK(gen_binomial(2.0, 3) == 0.0);
}

TEST_CASE("series_C closed cases") {
  const double delta = 0.5, theta = 1.7;
  CHECK(series_C(1.0, 0.3, delta, theta) ==
        doctest::Approx(std::pow(theta, delta) * 0.3 / sinc_delta(delta)).epsilon(1e-13));
  for (double b : {-2.0, -1.0, 0.5, 1.0, 2.0}) CHECK(series_C(b, 0.0, delta, theta) == 0.0);
}

TEST_CASE("series_C matches the radial integral") {
  const double theta = 1.0;
  for (double b : {2.0, 1.0, -1.0, -2.0})
    for (double zeta : {0.1, 0.5})
      for (double delta : {0.4, 0.5, 2.0 / 3.0}) {
        CAPTURE(b);
        CAPTURE(zeta);
        CAPTURE(delta);
        const double ref = radial_C(b, zeta, delta, theta);
        CHECK(std::abs(series_C(b, zeta, delta, theta) / ref - 1.0) < 1e-8);
      }
  CHECK(std::abs(series_C(-1.0, 0.3, 0.5, 1.0) / radial_C(-1.0, 0.3, 0.5, 1.0) - 1.0) < 1e-8);
}

TEST_CASE("series_C is continuous in b") {
  const double c1 = series_C(1.0, 0.3, 0.5, 1.0);
  for (double b : {1.0 - 1e-6, 1.0 + 1e-6}) CHECK(std::abs(series_C(b, 0.3, 0.5, 1.0) / c1 - 1.0) < 1e-4);
}

TEST_CASE("integrate_1d") {
  // Gauss-Kronrod 15 is exact for low-degree polynomials
  for (int deg = 0; deg <= 6; ++deg) {
    const auto r = integrate_1d([deg](double x) { return (deg + 1) * std::pow(x, deg); }, 0.0, 1.0);
    CHECK(std::abs(r.value - 1.0) < 1e-12);
  }
  CHECK(std::abs(integrate_1d([](double x) { return std::exp(-x); }, 0.0, INFINITY).value - 1.0) < 1e-10);
  auto spec = QuadratureSpec{}.with_rel_tol(1e-10);
  CHECK(std::abs(integrate_1d([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, spec).value - 2.0) < 1e-8);
}

TEST_CASE("integrate_1d reports failure") {
  QuadratureSpec spec;
  spec.max_subdivisions = 10;
  spec.rel_tol = 1e-14;
  auto f = [](double x) { return std::sin(1.0 / x); };
  CHECK_FALSE(try_integrate_1d(f, 1e-4, 1.0, spec).converged);
  CHECK_THROWS_AS(integrate_1d(f, 1e-4, 1.0, spec), QuadratureError);
  spec.rel_tol = -1.0;
  CHECK_THROWS_AS(spec.check(), cellaoi::Error);
}

TEST_CASE("integrate_2d over a triangle") {
  // nested midpoint oracle
  const int n = 2000;
  double grid = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) * pi / n, h = (pi - u) / n;
    double inner = 0.0;
    for (int j = 0; j < n; ++j) inner += std::sin((j + 0.5) * h);
    grid += std::sin(u) * inner * h * (pi / n);
  }
  Region2D region;
  region.u_lo = 0.0;
  region.u_hi = pi;
  region.v_hi = [](double u) { return pi - u; };
  const auto r = integrate_2d([](double u, double v) { return std::sin(u) * std::sin(v); }, region,
                              QuadratureSpec{}.with_rel_tol(1e-10));
  CHECK(std::abs(r.value - grid) < 1e-6);
}

TEST_CASE("solve_2d_root") {
  auto lin = solve_2d_root([](double x, double y) { return Vec2{x - 2.0, y - 3.0}; }, {1.0, 1.0});
  CHECK(lin.x == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lin.y == doctest::Approx(3.0).epsilon(1e-12));
  auto nl = solve_2d_root([](double x, double y) { return Vec2{x * x - 4.0, x * y - 6.0}; }, {1.0, 1.0});
  CHECK(nl.x == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(nl.y == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(nl.residual < 1e-12);
  CHECK_THROWS_AS(solve_2d_root([](double x, double y) { return Vec2{x * x + 1.0, y}; }, {1.0, 1.0}),
                  cellaoi::Error);
}

TEST_CASE("bisect and golden section") {
  CHECK(bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  const auto m = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, -1.0, 1.0, 1e-9);
  CHECK(m.x == doctest::Approx(0.3).epsilon(1e-6));
  const auto edge = golden_section_maximize([](double x) { return x; }, 0.0, 1.0, 1e-6);
  CHECK(edge.x == 1.0);
}

}  // TEST_SUITE
