#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cellaoi/analytics.hpp"

using namespace cellaoi;
using std::numbers::pi;

namespace {

NetworkParams orthogonal(NetworkParams p) {
  p.access_mode = AccessMode::Orthogonal;
  return p;
}

}  // namespace

TEST_SUITE("analytics") {

TEST_CASE("D2D success at defaults") {
  const NetworkParams p;
  // epsilon = 0, delta = 1/2, beta_d = 1: both exponents in closed form
  const double sinc = 2.0 / pi;
  const double own = pi * p.q_d * (p.lambda_d - p.lambda_b) * p.r_d * p.r_d / sinc;
  const double updates = pi * p.lambda_b * p.r_d * p.r_d / sinc;
  CHECK(own == doctest::Approx(0.011252).epsilon(1e-4));
  CHECK(updates == doctest::Approx(0.001974).epsilon(1e-3));
  CHECK(std::abs(d2d_success(p) - std::exp(-own - updates)) < 1e-12);
  CHECK(d2d_success(p) == doctest::Approx(0.9869).epsilon(1e-4));

  NetworkParams q = orthogonal(p);
  CHECK(std::abs(d2d_success(q) - std::exp(-own)) < 1e-12);
  q.q_d = 0.0;
  CHECK(d2d_success(q) == 1.0);
}

TEST_CASE("D2D success decreases in q_d, beta_d, R_d, lambda_d") {
  auto decreasing = [](auto set, std::vector<double> grid) {
    double prev = 2.0;
    for (double x : grid) {
      NetworkParams p;
      set(p, x);
      const double v = d2d_success(p);
      CHECK(v < prev);
      prev = v;
    }
  };
  decreasing([](NetworkParams& p, double x) { p.q_d = x; }, {0.1, 0.3, 0.6, 0.9});
  decreasing([](NetworkParams& p, double x) { p.beta_d = x; }, {0.1, 1.0, 3.0, 10.0});
  decreasing([](NetworkParams& p, double x) { p.r_d = x; }, {1.0, 2.0, 5.0, 10.0});
  decreasing([](NetworkParams& p, double x) { p.lambda_d = x * 1e-4; }, {5.0, 10.0, 20.0, 40.0});
  for (double eps : {0.0, 0.5, 1.0}) {
    NetworkParams p;
    p.epsilon = eps;
    CHECK(d2d_success(orthogonal(p)) >= d2d_success(p));
  }
}

TEST_CASE("D2D activity zeta_d") {
  NetworkParams p;
  const CellStatistics s = cell_statistics(p);
  const double F = p.coverage();
  CHECK(zeta_d(p, s.zeta_b) == doctest::Approx(p.q_d * (1 - F) + p.q_d * (1 - s.zeta_b) * F));
  CHECK(zeta_d(p, s.zeta_b, true) == doctest::Approx(p.q_d * F + p.q_d * (1 - s.zeta_b) * (1 - F)));
  p.jm_radius = 1e4;
  CHECK(zeta_d(p, 0.2) == doctest::Approx(p.q_d * 0.8).epsilon(1e-12));
  p.q_d = 0.0;
  CHECK(zeta_d(p, 0.2) == 0.0);
}

TEST_CASE("interference constant") {
  const NetworkParams p;
  const double theta = p.beta_b / p.power_ratio();
  CHECK(interference_constant(1.0, p, 0.28) ==
        doctest::Approx(std::sqrt(theta) * 0.28 / numerics::sinc_delta(0.5)).epsilon(1e-12));
  for (double b : {1.0, 2.0, -1.0}) CHECK(interference_constant(b, orthogonal(p), 0.28) == 0.0);
}

TEST_CASE("moment M_b") {
  const NetworkParams p;
  const CellStatistics s = cell_statistics(p);
  CHECK(conditional_success_moment(0.0, p, s) == 1.0);
  double prev = 1.0;
  for (double b : {1.0, 2.0, 3.0}) {
    const double m = conditional_success_moment(b, p, s);
    CHECK(m < prev);
    CHECK(m > 0.0);
    prev = m;
  }
  CHECK(conditional_success_moment(-1.0, p, s) * conditional_success_moment(1.0, p, s) >= 1.0);
  CHECK(conditional_success_moment(2.0, p, s) >= std::pow(conditional_success_moment(1.0, p, s), 2));

  // M_b -> 1 as beta_b -> 0. Co-channel D2D interference makes 1 - M_1 of
  // order beta_b^delta, so the deviation shrinks tenfold per 20 dB.
  NetworkParams tiny = p;
  tiny.beta_b = 1e-6;
  CHECK(std::abs(conditional_success_moment(1.0, orthogonal(tiny)) - 1.0) < 1e-3);
  const double dev6 = 1.0 - conditional_success_moment(1.0, tiny);
  tiny.beta_b = 1e-8;
  const double dev8 = 1.0 - conditional_success_moment(1.0, tiny);
  CHECK(dev8 < 1e-3);
  CHECK(dev6 / dev8 == doctest::Approx(10.0).epsilon(0.01));

  CHECK(conditional_success_moment(1.0, orthogonal(p), s) >= conditional_success_moment(1.0, p, s));
}

TEST_CASE("special-case forms agree with the general form") {
  for (double eps : {0.0, 1.0}) {
    NetworkParams p;
    p.epsilon = eps;
    const CellStatistics s = cell_statistics(p);
    AnalyticOptions general;
    general.moment_form = MomentForm::General;
    for (double b : {1.0, 2.0}) {
      CAPTURE(eps);
      CAPTURE(b);
      const double a = conditional_success_moment(b, p, s);
      const double g = conditional_success_moment(b, p, s, general);
      CHECK(std::abs(a / g - 1.0) < 10 * general.quad.rel_tol);
    }
  }
}

TEST_CASE("saturated scheduler") {
  const NetworkParams p;
  CellStatistics s = cell_statistics(p);
  s.zeta_b = 1.0;
  CHECK_THROWS_AS(conditional_success_moment(-1.0, p, s), Error);
  CHECK_NOTHROW(conditional_success_moment(1.0, p, s));
}

TEST_CASE("throughput") {
  NetworkParams p;
  auto t = throughput(p, 0.9869, 0.2);
  CHECK(t.t_d == doctest::Approx(200000 * 0.2 * std::log2(2.0) * 0.9869));
  CHECK(t.t_d == doctest::Approx(39476).epsilon(1e-4));
  CHECK(t.t_n / t.t_d == doctest::Approx(p.lambda_d));
  t = throughput(p, 0.9869, 0.0);
  CHECK(t.t_d == 0.0);
  CHECK(t.t_n == 0.0);
}

TEST_CASE("achievable throughput") {
  const NetworkParams p;
  const CellStatistics s = cell_statistics(p);
  const double zd = zeta_d(p, s.zeta_b);
  const auto a = achievable_throughput(p, zd);
  for (double db : {-0.5, 0.5}) {
    NetworkParams q = p;
    q.beta_d = a.beta_star * db_to_linear(db);
    CHECK(throughput(q, d2d_success(q), zd).t_d <= a.t_d_star);
  }

  NetworkParams quiet = orthogonal(p);
  quiet.q_d = 1e-9;
  CHECK(achievable_throughput(quiet, zeta_d(quiet, s.zeta_b)).beta_star == doctest::Approx(1e3).epsilon(1e-3));

  double prev = 0.0;
  for (double ratio : {5.0, 10.0, 20.0, 40.0}) {
    NetworkParams q = p;
    q.lambda_d = ratio * q.lambda_b;
    const double v = achievable_throughput(q, zeta_d(q, cell_statistics(q).zeta_b)).t_n_star;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("conditional mean AoI") {
  CHECK(conditional_mean_aoi(1, 1.0).mean == 1.0);
  CHECK(conditional_mean_aoi(2, 0.5).mean == 4.0);
  CHECK(conditional_mean_aoi(3, 0.0).infinite);
  // E[X] = N / P for the geometric inter-delivery time
  const auto c = conditional_mean_aoi(4, 0.3);
  CHECK(c.ex == doctest::Approx(4 / 0.3));
  CHECK(c.ex2 >= c.ex * c.ex);
}

TEST_CASE("spatial AoI moments") {
  const NetworkParams p;
  const CellStatistics s = cell_statistics(p);
  const double en = load_moment_conditional(s.load, 1);
  const double d1 = aoi_spatial_moment(1, p, s), d2 = aoi_spatial_moment(2, p, s);
  CHECK(d1 >= en);
  CHECK(d2 >= d1 * d1);

  NetworkParams tiny = p;
  tiny.beta_b = 1e-6;
  CHECK(std::abs(aoi_spatial_moment(1, tiny) / en - 1.0) < 5e-3);

  double prev = 0.0;
  for (double db : {-3.0, 0.0, 3.0, 6.0}) {
    NetworkParams q = p;
    q.beta_b = db_to_linear(db);
    const double v = aoi_spatial_moment(1, q, s);
    CHECK(v > prev);
    prev = v;
  }
  prev = 0.0;
  for (double ratio : {5.0, 10.0, 20.0, 40.0}) {
    NetworkParams q = p;
    q.lambda_d = ratio * q.lambda_b;
    const double v = aoi_spatial_moment(1, q);
    CHECK(v > prev);
    prev = v;
  }

  const double variant = aoi_mean_load_factor_variant(p, s);
  CHECK(variant == doctest::Approx(20.0 * (1 - std::exp(-pi * kDistanceCorrection * p.lambda_b * 1600.0)) *
                                   conditional_success_moment(-1.0, p, s)));
}

TEST_CASE("only the power ratio matters") {
  const NetworkParams p;
  NetworkParams q = p;
  q.p_b *= 2.0;
  q.p_d *= 2.0;
  const auto a = analytic_report(p), b = analytic_report(q);
  CHECK(a.p_d == b.p_d);
  CHECK(a.zeta_d == b.zeta_d);
  CHECK(a.m_b == b.m_b);
  CHECK(a.c_b == b.c_b);
  CHECK(a.delta_n == b.delta_n);
  CHECK(a.achievable.t_n_star == b.achievable.t_n_star);
}

TEST_CASE("report under orthogonal access") {
  const auto r = analytic_report(orthogonal(NetworkParams{}));
  for (const auto& [b, c] : r.c_b) CHECK(c == 0.0);
  CHECK(r.access_mode == AccessMode::Orthogonal);
}

}  // TEST_SUITE
