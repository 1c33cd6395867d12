#include "cellaoi/cli/experiment.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "cellaoi/analytics.hpp"
#include "cellaoi/cli/csv.hpp"
#include "cellaoi/error.hpp"
#include "cellaoi/jm_cell.hpp"
#include "cellaoi/sim/estimators.hpp"

namespace cellaoi::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<double> kMoments = {1.0, 2.0, -1.0, -2.0};
const std::vector<int> kAoiOrders = {1, 2};

std::string b_name(double b) { return std::to_string(static_cast<int>(b)); }

AnalyticOptions analytic_options(const ExperimentConfig& cfg) {
  AnalyticOptions o;
  o.eq15_as_printed = cfg.eq15_as_printed;
  o.quad = o.quad.with_rel_tol(cfg.quad_rel_tol);
  return o;
}

sim::SimConfig sim_config(const ExperimentConfig& cfg, const NetworkParams& p) {
  sim::SimConfig s;
  s.n_realizations = cfg.n_realizations;
  s.n_slots = cfg.n_slots;
  s.master_seed = cfg.master_seed;
  s.window_side = cfg.window_factor / std::sqrt(p.lambda_b);
  s.threads = cfg.threads;
  return s;
}

double rel_err(double analytic, double simulated) {
  return std::abs(analytic - simulated) / std::abs(analytic);
}

// --- column sets -----------------------------------------------------------

std::vector<std::string> analytic_columns(const ExperimentConfig& cfg, const std::string& prefix) {
  std::vector<std::string> c = {"P_d", "zeta_d", "zeta_b"};
  for (double b : kMoments) c.push_back("C_" + b_name(b));
  for (double b : kMoments) c.push_back("M_" + b_name(b));
  for (const char* s : {"T_d", "T_N", "beta_star", "T_d_star", "T_N_star", "Delta_1", "Delta_2"}) c.push_back(s);
  if (cfg.corollary5_variant) c.push_back("Delta_1_load_variant");
  for (auto& s : c) s = prefix + s;
  return c;
}

std::vector<std::string> analytic_fields(const ExperimentConfig& cfg, const AnalyticReport& r) {
  std::vector<std::string> f = {format_double(r.p_d), format_double(r.zeta_d), format_double(r.zeta_b)};
  for (double b : kMoments) f.push_back(format_double(r.c_b.at(b)));
  for (double b : kMoments) f.push_back(format_double(r.m_b.at(b)));
  for (double v : {r.t_d, r.t_n, r.achievable.beta_star, r.achievable.t_d_star, r.achievable.t_n_star,
                   r.delta_n.at(1), r.delta_n.at(2)})
    f.push_back(format_double(v));
  if (cfg.corollary5_variant) f.push_back(format_double(r.delta1_variant));
  return f;
}

struct SimRow {
  sim::SimEstimate p_d, zeta_d;
  std::map<double, sim::SimEstimate> m;
  std::map<int, sim::SimEstimate> delta;
  Throughput throughput;
  double ks = 0.0;
  int zero_success = 0;
  int never_scheduled = 0;
};

SimRow simulate_point(const ExperimentConfig& cfg, const NetworkParams& p, std::ostream& summary,
                      const std::string& label) {
  const auto s = sim::simulate_metrics(p, kMoments, kAoiOrders, sim_config(cfg, p));
  SimRow r;
  r.p_d = s.p_d;
  r.zeta_d = s.moments.d2d_transmit_frequency;
  r.m = s.moments.moments;
  r.delta = s.aoi.moments;
  r.throughput = throughput(p, s.p_d.value, r.zeta_d.value);
  r.ks = s.aoi.ks_joint_vs_independent;
  r.zero_success = s.moments.zero_success_realizations;
  r.never_scheduled = s.moments.never_scheduled_realizations;
  if (s.negative_moments_degenerate)
    summary << "warning" << label << ": negative moments not estimated: " << s.degenerate_message << '\n';
  return r;
}

std::vector<std::string> sim_columns(const std::string& prefix) {
  std::vector<std::string> c;
  auto est = [&](const std::string& n) {
    c.push_back(prefix + n);
    c.push_back(prefix + n + "_ci");
  };
  est("P_d");
  est("zeta_d");
  for (double b : kMoments) est("M_" + b_name(b));
  c.push_back(prefix + "T_d");
  c.push_back(prefix + "T_N");
  for (int n : kAoiOrders) est("Delta_" + std::to_string(n));
  for (const char* s : {"ks_assumption1", "zero_success_realizations", "never_scheduled_realizations"})
    c.push_back(prefix + s);
  return c;
}

std::vector<std::string> sim_fields(const SimRow& r) {
  std::vector<std::string> f;
  auto est = [&](const sim::SimEstimate* e) {
    f.push_back(format_double(e ? e->value : kNaN));
    f.push_back(format_double(e ? e->ci_half_width : kNaN));
  };
  est(&r.p_d);
  est(&r.zeta_d);
  for (double b : kMoments) {
    const auto it = r.m.find(b);
    est(it == r.m.end() ? nullptr : &it->second);
  }
  f.push_back(format_double(r.throughput.t_d));
  f.push_back(format_double(r.throughput.t_n));
  for (int n : kAoiOrders) est(&r.delta.at(n));
  f.push_back(format_double(r.ks));
  f.push_back(std::to_string(r.zero_success));
  f.push_back(std::to_string(r.never_scheduled));
  return f;
}

std::vector<std::string> fit_area_columns() {
  return {"lambda_b", "J", "kappa1", "kappa2", "atom_prob", "mean_area", "second_moment_area",
          "support_scale", "mean_inverse_area", "zeta_b", "E_N_given_nonempty", "E_N2_given_nonempty",
          "P_empty", "n_max"};
}

std::vector<std::string> fit_area_fields(const NetworkParams& p) {
  const CellStatistics s = cell_statistics(p);
  const auto& a = s.area;
  return {format_double(p.lambda_b),
          format_double(p.jm_radius),
          format_double(a.kappa1),
          format_double(a.kappa2),
          format_double(a.atom_prob),
          format_double(a.mean_area),
          format_double(a.second_moment_area),
          format_double(a.support_scale),
          format_double(s.mean_inverse_area),
          format_double(s.zeta_b),
          format_double(load_moment_conditional(s.load, 1)),
          format_double(load_moment_conditional(s.load, 2)),
          format_double(s.load.prob(0)),
          std::to_string(s.load.n_max)};
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownKey:
    case ErrorCode::UnknownParam:
    case ErrorCode::InvalidValue:
    case ErrorCode::InvalidParams:
    case ErrorCode::AlphaTooSmall:
    case ErrorCode::NonPositiveDensity:
    case ErrorCode::DensityOrder:
    case ErrorCode::DensityRatioLow:
    case ErrorCode::ProbabilityOutOfRange:
    case ErrorCode::NonPositiveDistance:
    case ErrorCode::NonPositivePower:
    case ErrorCode::NonPositiveThreshold:
    case ErrorCode::NonPositiveBandwidth:
    case ErrorCode::JmRadiusInvalid:
    case ErrorCode::JmRadiusInfinite:
      return kExitUsage;
    default:
      return kExitNumerical;
  }
}

int run(const ExperimentConfig& config, std::ostream& csv, std::ostream& summary) {
  std::vector<SweepPoint> points;
  try {
    validate_config(config);
    points = expand_sweep(config);
  } catch (const Error& e) {
    summary << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }

  std::vector<std::string> header;
  for (const auto& [name, _] : points.front().labels) header.push_back(name);
  auto append = [&](std::vector<std::string> cols) { header.insert(header.end(), cols.begin(), cols.end()); };

  const Command cmd = config.command;
  switch (cmd) {
    case Command::Analytic:
    case Command::Sweep:
      header.push_back("access_mode");
      append(analytic_columns(config, ""));
      break;
    case Command::Simulate:
      header.push_back("access_mode");
      append(sim_columns(""));
      break;
    case Command::Compare:
      header.push_back("access_mode");
      append(analytic_columns(config, "analytic_"));
      append(sim_columns("sim_"));
      for (const char* s : {"rel_err_P_d", "rel_err_M_1", "rel_err_M_2", "rel_err_Delta_1", "within_tolerance"})
        header.push_back(s);
      break;
    case Command::FitArea:
      append(fit_area_columns());
      break;
  }

  CsvWriter out(csv);
  out.header(header);
  const AnalyticOptions aopts = analytic_options(config);
  int failed_points = 0;

  std::size_t i = 0;
  try {
    for (; i < points.size(); ++i) {
      const SweepPoint& pt = points[i];
      std::string label;
      std::vector<std::string> row;
      for (const auto& [name, value] : pt.labels) {
        row.push_back(value);
        label += " " + name + "=" + value;
      }
      auto add = [&](std::vector<std::string> f) { row.insert(row.end(), f.begin(), f.end()); };
      if (cmd != Command::FitArea) row.emplace_back(to_string(pt.params.access_mode));

      switch (cmd) {
        case Command::Analytic:
        case Command::Sweep:
          add(analytic_fields(config, analytic_report(pt.params, aopts)));
          break;
        case Command::Simulate:
          add(sim_fields(simulate_point(config, pt.params, summary, label)));
          break;
        case Command::Compare: {
          const AnalyticReport a = analytic_report(pt.params, aopts);
          const SimRow s = simulate_point(config, pt.params, summary, label);
          add(analytic_fields(config, a));
          add(sim_fields(s));
          const double e_pd = rel_err(a.p_d, s.p_d.value);
          const double e_m1 = rel_err(a.m_b.at(1.0), s.m.at(1.0).value);
          const double e_m2 = rel_err(a.m_b.at(2.0), s.m.at(2.0).value);
          const double e_d1 = rel_err(a.delta_n.at(1), s.delta.at(1).value);
          const auto& t = config.tolerances;
          const bool ok = e_pd <= t.p_d && e_m1 <= t.m_1 && e_m2 <= t.m_2 && e_d1 <= t.delta_1;
          for (double e : {e_pd, e_m1, e_m2, e_d1}) row.push_back(format_double(e));
          row.push_back(ok ? "1" : "0");
          if (!ok) {
            ++failed_points;
            summary << "tolerance exceeded" << label << ": rel_err P_d " << e_pd << ", M_1 " << e_m1
                    << ", M_2 " << e_m2 << ", Delta_1 " << e_d1 << '\n';
          }
          break;
        }
        case Command::FitArea:
          add(fit_area_fields(pt.params));
          break;
      }
      out.row(row);
    }
  } catch (const Error& e) {
    out.error_row(e.what());
    summary << "error at point " << i + 1 << " of " << points.size() << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }

  summary << to_string(cmd) << ": " << points.size() << (points.size() == 1 ? " row" : " rows");
  if (!config.preset.empty()) summary << " (preset " << config.preset << ")";
  summary << '\n';
  if (cmd == Command::Compare) {
    summary << (failed_points == 0 ? "all points within tolerance\n"
                                   : std::to_string(failed_points) + " point(s) outside tolerance\n");
    if (failed_points > 0) return kExitCompareFailed;
  }
  return kExitOk;
}

}  // namespace cellaoi::cli
