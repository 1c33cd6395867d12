#include "cellaoi/sim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cellaoi/error.hpp"
#include "cellaoi/sim/network.hpp"
#include "cellaoi/sim/parallel.hpp"
#include "cellaoi/sim/rng.hpp"
#include "cellaoi/sim/slots.hpp"

namespace cellaoi::sim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double window_for(const NetworkParams& params, const SimConfig& cfg) {
  return cfg.window_side > 0.0 ? cfg.window_side : default_window_side(params.lambda_b);
}

// Runs every realization and collects the SlotRun of each.
std::vector<SlotRun> run_realizations(const NetworkParams& params, const SimConfig& cfg, const SlotOptions& opts) {
  require_valid(params);
  if (cfg.n_realizations < 1) throw Error(ErrorCode::DomainError, "simulation: n_realizations must be >= 1");
  const double side = window_for(params, cfg);
  std::vector<SlotRun> runs(static_cast<std::size_t>(cfg.n_realizations));
  parallel_for(
      runs.size(),
      [&](std::size_t i) {
        const auto seed = derive_seed(cfg.master_seed, i);
        const auto net = sample_network(params, side, derive_seed(seed, 0));
        runs[i] = run_slots(net, params, cfg.n_slots, derive_seed(seed, 1), opts);
      },
      cfg.threads);
  return runs;
}

double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

// Signed area of the disc of radius R (at the origin) intersected with the
// triangle (0, a, b).
double disc_triangle_area(Point a, Point b, double R) {
  const Point d{b.x - a.x, b.y - a.y};
  const double A = dot(d, d), B = dot(a, d), C = dot(a, a) - R * R;
  double ts[4] = {0.0, 0.0, 0.0, 1.0};
  int n = 1;
  const double disc = B * B - A * C;
  if (!(A > 0.0) || disc <= 0.0) return 0.5 * R * R * std::atan2(cross(a, b), dot(a, b));  // misses the disc
  {
    const double s = std::sqrt(disc);
    for (double t : {(-B - s) / A, (-B + s) / A})
      if (t > 0.0 && t < 1.0) ts[n++] = t;
  }
  ts[n++] = 1.0;
  double area = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    const Point p{a.x + ts[k] * d.x, a.y + ts[k] * d.y};
    const Point q{a.x + ts[k + 1] * d.x, a.y + ts[k + 1] * d.y};
    const double tm = 0.5 * (ts[k] + ts[k + 1]);
    const Point m{a.x + tm * d.x, a.y + tm * d.y};
    if (dot(m, m) < R * R)
      area += 0.5 * cross(p, q);
    else
      area += 0.5 * R * R * std::atan2(cross(p, q), dot(p, q));
  }
  return area;
}

// Keeps the part of the convex polygon with x.n <= c.
std::vector<Point> clip(const std::vector<Point>& poly, Point n, double c) {
  std::vector<Point> out;
  out.reserve(poly.size() + 1);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point p = poly[i], q = poly[(i + 1) % poly.size()];
    const double fp = dot(p, n) - c, fq = dot(q, n) - c;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  return out;
}

double max_radius(const std::vector<Point>& poly) {
  double r2 = 0.0;
  for (const auto& p : poly) r2 = std::max(r2, dot(p, p));
  return std::sqrt(r2);
}

double polygon_disc_area(const std::vector<Point>& poly, double R) {
  double area = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) area += disc_triangle_area(poly[i], poly[(i + 1) % poly.size()], R);
  return area;
}

// Square around the disc, kept clear of it so no edge is tangent.
std::vector<Point> disc_box(double J) {
  const double h = 1.5 * J;
  return {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
}

}  // namespace

double jm_cell_area(const std::vector<Point>& neighbours, double J) {
  auto poly = disc_box(J);
  for (const auto& q : neighbours) {
    if (poly.empty()) break;
    poly = clip(poly, q, 0.5 * dot(q, q));
  }
  return poly.size() < 3 ? 0.0 : polygon_disc_area(poly, J);
}

namespace {

SimEstimate d2d_from_runs(const std::vector<SlotRun>& runs, std::uint64_t seed) {
  std::vector<double> rates;
  rates.reserve(runs.size());
  for (const auto& r : runs) rates.push_back(r.d2d_success_rate());
  return estimate_mean(rates, seed);
}

// Fills everything but the moments; returns the number of degenerate realizations.
int success_rates_from_runs(const std::vector<SlotRun>& runs, std::uint64_t seed, MomentEstimates& out) {
  std::vector<double> freq;
  for (const auto& r : runs) {
    const double p = r.update_success_rate();
    out.success_rates.push_back(p);
    if (std::isnan(p))
      ++out.never_scheduled_realizations;
    else if (p == 0.0)
      ++out.zero_success_realizations;
    if (r.device_slot_total > 0)
      freq.push_back(static_cast<double>(r.d2d_active_total) / static_cast<double>(r.device_slot_total));
  }
  out.d2d_transmit_frequency = estimate_mean(freq, seed);
  return out.zero_success_realizations + out.never_scheduled_realizations;
}

SimEstimate moment_of(const std::vector<double>& rates, double b, std::uint64_t seed) {
  std::vector<double> samples;
  for (double p : rates) {
    if (std::isnan(p) || (b < 0.0 && p == 0.0)) continue;
    samples.push_back(b == 0.0 ? 1.0 : std::pow(p, b));
  }
  return estimate_mean(samples, seed);
}

std::string degenerate_message(int degenerate, std::size_t n) {
  return std::to_string(degenerate) + " of " + std::to_string(n) +
         " realizations have no successful update; increase n_slots for negative moments";
}

AoiEstimates aoi_from_runs(const std::vector<SlotRun>& runs, const std::vector<int>& n_list, std::uint64_t seed) {
  AoiEstimates out;
  std::vector<double> loads;
  for (const auto& r : runs) {
    out.temporal_means.push_back(r.mean_aoi);
    out.loads.push_back(r.typical_load);
    loads.push_back(r.typical_load);
    out.success_rates.push_back(r.update_success_rate());
    if (r.scheduled_slots < 20) ++out.low_schedule_realizations;
  }
  out.load_conditional = estimate_mean(loads, seed);
  for (int n : n_list) {
    std::vector<double> samples;
    for (double a : out.temporal_means) samples.push_back(std::pow(a, n));
    out.moments[n] = estimate_mean(samples, seed);
  }

  auto ratio = [](int load, double p) {
    return (std::isnan(p) || p == 0.0) ? std::numeric_limits<double>::infinity() : load / p;
  };
  std::vector<std::size_t> perm(runs.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  Rng rng = make_rng(derive_seed(seed, 0xA551u));
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    out.joint.push_back(ratio(out.loads[i], out.success_rates[i]));
    out.independent.push_back(ratio(out.loads[i], out.success_rates[perm[i]]));
  }
  out.ks_joint_vs_independent = ks_distance(out.joint, out.independent);
  return out;
}

}  // namespace

SimEstimate estimate_d2d_success(const NetworkParams& params, const SimConfig& cfg) {
  SlotOptions opts;
  opts.evaluate_d2d = true;
  return d2d_from_runs(run_realizations(params, cfg, opts), cfg.master_seed);
}

MomentEstimates estimate_conditional_success_moments(const NetworkParams& params, const std::vector<double>& b_list,
                                                     const SimConfig& cfg) {
  SlotOptions opts;
  opts.evaluate_d2d = false;
  const auto runs = run_realizations(params, cfg, opts);
  MomentEstimates out;
  const int degenerate = success_rates_from_runs(runs, cfg.master_seed, out);
  const bool negative = std::any_of(b_list.begin(), b_list.end(), [](double b) { return b < 0.0; });
  if (negative && degenerate > 0.05 * static_cast<double>(runs.size()))
    throw Error(ErrorCode::DegenerateSamples, degenerate_message(degenerate, runs.size()));
  for (double b : b_list) out.moments[b] = moment_of(out.success_rates, b, cfg.master_seed);
  return out;
}

AoiEstimates estimate_aoi_moments(const NetworkParams& params, const std::vector<int>& n_list, const SimConfig& cfg) {
  SlotOptions opts;
  opts.evaluate_d2d = false;
  return aoi_from_runs(run_realizations(params, cfg, opts), n_list, cfg.master_seed);
}

SimulationSummary simulate_metrics(const NetworkParams& params, const std::vector<double>& b_list,
                                   const std::vector<int>& n_list, const SimConfig& cfg) {
  SlotOptions opts;
  opts.evaluate_d2d = true;
  const auto runs = run_realizations(params, cfg, opts);
  SimulationSummary s;
  s.p_d = d2d_from_runs(runs, cfg.master_seed);
  const int degenerate = success_rates_from_runs(runs, cfg.master_seed, s.moments);
  s.negative_moments_degenerate = degenerate > 0.05 * static_cast<double>(runs.size());
  if (s.negative_moments_degenerate) s.degenerate_message = degenerate_message(degenerate, runs.size());
  for (double b : b_list) {
    if (b < 0.0 && s.negative_moments_degenerate) continue;
    s.moments.moments[b] = moment_of(s.moments.success_rates, b, cfg.master_seed);
  }
  s.aoi = aoi_from_runs(runs, n_list, cfg.master_seed);
  return s;
}

AreaLoadSamples estimate_area_and_load(const NetworkParams& params, int n_realizations, std::uint64_t seed) {
  if (!(params.lambda_b > 0.0) || !(params.jm_radius > 0.0) || !std::isfinite(params.jm_radius))
    throw Error(ErrorCode::DomainError, "estimate_area_and_load: lambda_b > 0 and finite J > 0 required");
  if (n_realizations < 1) throw Error(ErrorCode::DomainError, "estimate_area_and_load: n_realizations must be >= 1");
  const auto n = static_cast<std::size_t>(n_realizations);
  const double J = params.jm_radius;
  AreaLoadSamples out;
  out.areas.resize(n);
  out.loads.resize(n);
  out.full_disc.resize(n);

  parallel_for(n, [&](std::size_t i) {
    Rng rng = make_rng(derive_seed(seed, i));
    std::exponential_distribution<double> exp1(1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    // neighbours in increasing distance: pi lambda_b r_k^2 are the points of a unit-rate PPP on the line
    auto poly = disc_box(J);
    double gamma = 0.0;
    bool first = true;
    for (;;) {
      gamma += exp1(rng);
      const double r = std::sqrt(gamma / (kPi * params.lambda_b));
      if (first) out.full_disc[i] = r >= 2.0 * J;
      first = false;
      if (0.5 * r >= std::min(J, max_radius(poly))) break;
      const double phi = angle(rng);
      const Point q{r * std::cos(phi), r * std::sin(phi)};
      poly = clip(poly, q, 0.5 * r * r);
    }
    out.areas[i] = polygon_disc_area(poly, J);
    std::poisson_distribution<int> devices(params.lambda_d * out.areas[i]);
    out.loads[i] = params.lambda_d > 0.0 ? devices(rng) : 0;
  });

  std::vector<double> sq, inv, inv_load;
  int atoms = 0, empty = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sq.push_back(out.areas[i] * out.areas[i]);
    inv.push_back(1.0 / out.areas[i]);
    if (out.full_disc[i]) ++atoms;
    if (out.loads[i] == 0)
      ++empty;
    else
      inv_load.push_back(1.0 / out.loads[i]);
  }
  out.mean_area = estimate_mean(out.areas, seed);
  out.second_moment_area = estimate_mean(sq, seed);
  out.mean_inverse_area = estimate_mean(inv, seed);
  out.atom_fraction = static_cast<double>(atoms) / static_cast<double>(n);
  out.empty_fraction = static_cast<double>(empty) / static_cast<double>(n);
  out.mean_inverse_load = estimate_mean(inv_load, seed);
  return out;
}

}  // namespace cellaoi::sim
