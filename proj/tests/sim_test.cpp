#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "cellaoi/sim/estimators.hpp"
#include "cellaoi/sim/network.hpp"
#include "cellaoi/sim/rng.hpp"
#include "cellaoi/sim/slots.hpp"
#include "cellaoi/sim/stats.hpp"

using namespace cellaoi;
using namespace cellaoi::sim;
using std::numbers::pi;

namespace {

// One BS, one device in its cell, nothing else in the window.
Realization lone_link(double side) {
  Realization r;
  r.window_side = side;
  r.bs_points = {{side / 2, side / 2}};
  r.device_tx_points = {{side / 2 + 10.0, side / 2}};
  r.d2d_rx_offsets = {{2.0, 0.0}};
  r.serving_bs = {0};
  r.serving_distance = {10.0};
  r.cell_members = {{0}};
  r.typical_bs = 0;
  r.typical_device = 0;
  r.typical_d2d_rx = {1.0, 1.0};
  r.typical_d2d_tx = {3.0, 1.0};
  return r;
}

double window() { return 16.0 / std::sqrt(NetworkParams{}.lambda_b); }

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 9) == derive_seed(5, 9));
}

TEST_CASE("estimate_mean and compensated sums") {
  const auto e = estimate_mean({1.0, 2.0, 3.0, 4.0}, 42);
  CHECK(e.value == 2.5);
  CHECK(e.n_samples == 4);
  CHECK(e.master_seed == 42);
  CHECK(e.ci_half_width == doctest::Approx(1.96 * std::sqrt(5.0 / 3.0 / 4.0)));
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 10; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 10.0);
}

TEST_CASE("KS and total variation") {
  CHECK(ks_distance({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_distance({1, 2}, {3, 4}) == 1.0);
  CHECK(ks_distance({1, INFINITY}, {1, 2}) == doctest::Approx(0.5));
  auto cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_distance({0.5}, cdf, cdf) == doctest::Approx(0.5));
  CHECK(total_variation({0.5, 0.5}, {0.5, 0.25, 0.25}) == doctest::Approx(0.25));
  const auto pmf = empirical_pmf({0, 2, 2, 1});
  REQUIRE(pmf.size() == 3);
  CHECK(pmf[2] == 0.5);
}

TEST_CASE("JM cell area geometry") {
  const double J = 40.0;
  CHECK(jm_cell_area({}, J) == doctest::Approx(pi * J * J).epsilon(1e-12));
  // neighbour at distance 2d: the bisector cuts a circular cap off the disc
  const double d = 15.0;
  const double cap = J * J * std::acos(d / J) - d * std::sqrt(J * J - d * d);
  CHECK(jm_cell_area({{2 * d, 0.0}}, J) == doctest::Approx(pi * J * J - cap).epsilon(1e-10));
  CHECK(jm_cell_area({{0.0, 2 * J + 1.0}}, J) == doctest::Approx(pi * J * J).epsilon(1e-12));
  // four neighbours forming a square cell inside the disc
  CHECK(jm_cell_area({{20, 0}, {-20, 0}, {0, 20}, {0, -20}}, J) == doctest::Approx(400.0).epsilon(1e-10));
}

TEST_CASE("network sampling") {
  NetworkParams p;
  const Realization a = sample_network(p, default_window_side(p.lambda_b), 7);
  const Realization b = sample_network(p, default_window_side(p.lambda_b), 7);
  CHECK(a.bs_points.size() == b.bs_points.size());
  CHECK(a.device_tx_points.size() == b.device_tx_points.size());
  CHECK(std::equal(a.device_tx_points.begin(), a.device_tx_points.end(), b.device_tx_points.begin(),
                   [](Point u, Point v) { return u.x == v.x && u.y == v.y; }));
  CHECK(a.serving_bs == b.serving_bs);
  CHECK(a.typical_device == b.typical_device);
  CHECK(a.device_tx_points.size() > 10000);
  CHECK(a.assigned_fraction() == doctest::Approx(p.coverage()).epsilon(0.02 / 0.395));

  // typical device belongs to the typical cell, which sits at the center
  const auto& m = a.cell_members[static_cast<std::size_t>(a.typical_bs)];
  CHECK(std::find(m.begin(), m.end(), a.typical_device) != m.end());
  CHECK(a.bs_points[static_cast<std::size_t>(a.typical_bs)].x == doctest::Approx(a.window_side / 2));
  for (std::size_t i = 0; i < a.device_tx_points.size(); i += 97) {
    if (a.serving_bs[i] < 0) continue;
    CHECK(a.serving_distance[i] <= p.jm_radius);
  }

  NetworkParams none = p;
  none.lambda_d = 0.0;
  CHECK_THROWS_AS(sample_network(none, window(), 1), Error);
}

TEST_CASE("lone link: AoI pinned at one") {
  NetworkParams p;
  p.q_d = 0.0;
  SlotOptions o;
  o.record_aoi_path = true;
  const SlotRun run = run_slots(lone_link(window()), p, 200, 3, o);
  CHECK(run.update_successes == 200);
  CHECK(run.mean_aoi == 1.0);
  for (int a : run.aoi_path) CHECK(a == 1);
}

TEST_CASE("AoI path recursion and scheduling rules") {
  NetworkParams p;
  const Realization r = sample_network(p, window(), 21);
  SlotOptions o;
  o.record_aoi_path = true;
  o.record_outcomes = true;
  const SlotRun run = run_slots(r, p, 400, 5, o);
  REQUIRE(run.aoi_path.size() >= 2);
  for (std::size_t k = 0; k + 1 < run.aoi_path.size(); ++k) {
    CHECK(run.aoi_path[k] >= 1);
    const int next = run.aoi_path[k + 1];
    CHECK((next == 1 || next == run.aoi_path[k] + 1));
  }
  REQUIRE(run.outcomes.size() == 400);
  for (const auto& s : run.outcomes) {
    for (int dev : s.scheduled_device)
      if (dev >= 0) CHECK(s.d2d_active[static_cast<std::size_t>(dev)] == 0);
    // exactly one scheduled device per non-empty cell
    for (std::size_t b = 0; b < r.cell_members.size(); ++b)
      CHECK((s.scheduled_device[b] >= 0) == !r.cell_members[b].empty());
  }
}

TEST_CASE("round-robin-free fair scheduling") {
  NetworkParams p;
  const Realization r = sample_network(p, window(), 33);
  SlotOptions o;
  o.evaluate_d2d = false;
  const int n = 100000;
  const SlotRun run = run_slots(r, p, n, 8, o);
  const auto N = static_cast<double>(run.typical_load);
  REQUIRE(run.typical_cell_schedules.size() == static_cast<std::size_t>(run.typical_load));
  const double sigma = std::sqrt(n * (1 / N) * (1 - 1 / N));
  for (auto c : run.typical_cell_schedules) CHECK(std::abs(static_cast<double>(c) - n / N) <= 3 * sigma + 1e-9);
}

TEST_CASE("torus shift leaves SIRs unchanged") {
  NetworkParams p;
  const Realization r = sample_network(p, window(), 44);
  const Realization s = shifted(r, 123.4, -987.6);
  SlotOptions o;
  o.record_outcomes = true;
  const SlotRun a = run_slots(r, p, 50, 9, o), b = run_slots(s, p, 50, 9, o);
  for (std::size_t k = 0; k < a.outcomes.size(); ++k) {
    const auto& x = a.outcomes[k];
    const auto& y = b.outcomes[k];
    CHECK(x.scheduled_device == y.scheduled_device);
    CHECK(x.d2d_active == y.d2d_active);
    CHECK(x.sir_at_typical_d2d_rx == doctest::Approx(y.sir_at_typical_d2d_rx).epsilon(1e-9));
    if (x.typical_scheduled) CHECK(x.sir_at_typical_bs == doctest::Approx(y.sir_at_typical_bs).epsilon(1e-9));
  }
}

TEST_CASE("estimators are deterministic across thread counts") {
  NetworkParams p;
  SimConfig c;
  c.n_realizations = 24;
  c.n_slots = 60;
  c.window_side = window();
  c.threads = 1;
  const auto one = simulate_metrics(p, {1.0, 2.0}, {1, 2}, c);
  c.threads = 3;
  const auto three = simulate_metrics(p, {1.0, 2.0}, {1, 2}, c);
  CHECK(one.p_d.value == three.p_d.value);
  CHECK(one.moments.moments.at(1.0).value == three.moments.moments.at(1.0).value);
  CHECK(one.aoi.moments.at(1).value == three.aoi.moments.at(1).value);
  CHECK(one.aoi.ks_joint_vs_independent == three.aoi.ks_joint_vs_independent);
}

TEST_CASE("estimator identities") {
  NetworkParams p;
  SimConfig c;
  c.n_realizations = 60;
  c.n_slots = 200;
  c.window_side = window();
  const auto m = estimate_conditional_success_moments(p, {0.0, 1.0, 2.0}, c);
  CHECK(m.moments.at(0.0).value == 1.0);
  const auto& m1 = m.moments.at(1.0);
  const auto& m2 = m.moments.at(2.0);
  CHECK(m2.value >= m1.value * m1.value - m1.ci_half_width);

  const auto aoi = estimate_aoi_moments(p, {1, 2}, c);
  CHECK(aoi.moments.at(2).value >= aoi.moments.at(1).value * aoi.moments.at(1).value);

  // very short runs leave many realizations without a delivery
  SimConfig brief = c;
  brief.n_slots = 3;
  CHECK_THROWS_AS(estimate_conditional_success_moments(p, {-1.0}, brief), Error);
}

TEST_CASE("orthogonal access without D2D traffic") {
  NetworkParams p;
  p.access_mode = AccessMode::Orthogonal;
  p.q_d = 0.0;
  SimConfig c;
  c.n_realizations = 20;
  c.n_slots = 50;
  c.window_side = window();
  CHECK(estimate_d2d_success(p, c).value == 1.0);
}

}  // TEST_SUITE
