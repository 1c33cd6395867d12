#include "cellaoi/analytics.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "cellaoi/numerics/optimize.hpp"

namespace cellaoi {

namespace {

constexpr double kPi = std::numbers::pi;

using numerics::QuadratureSpec;
using numerics::QuadResult;

// Shared state for one M_b evaluation.
struct MomentIntegrand {
  double b;
  double lambda_b, lambda_d, alpha, eps, beta, J;
  double zeta_b, inv_area, cov_J, c1_lambda;
  QuadratureSpec r_spec, v_spec, u_spec;
  bool converged = true;

  double D(double v) const { return cov_J * -std::expm1(-2.0 * kPi * inv_area * v * v); }
  // F(sqrt(c1) x)
  double Fc(double x) const { return -std::expm1(-kPi * c1_lambda * x * x); }
  // 1 - (1 - zeta_b y)^b with y = 1 / (1 + q), q = v^alpha / (K u^{alpha eps})
  double bracket_q(double q) const {
    if (std::isinf(q)) return 0.0;
    return -std::expm1(b * std::log1p(-zeta_b / (1.0 + q)));
  }

  QuadResult integrate(const numerics::Integrand& f, double a, double c, const QuadratureSpec& s) {
    auto r = numerics::try_integrate_1d(f, a, c, s);
    converged = converged && r.converged;
    return r;
  }

  // int over [0, J] plus [J, inf) mapped by v = J / t.
  double integrate_v(const std::function<double(double)>& g) {
    const double head = integrate(g, 0.0, J, v_spec).value;
    auto tail_fn = [&](double t) {
      if (t <= 0.0) return 0.0;
      const double v = J / t;
      return g(v) * J / (t * t);
    };
    const double tail = integrate(tail_fn, 0.0, 1.0, v_spec).value;
    return head + tail;
  }

  // G-hat(r, b) of the fixed-power case.
  double g_hat(double r) {
    if (r <= 0.0) return 0.0;
    const double kr = beta * std::pow(r, alpha);
    auto g = [&](double v) {
      if (v <= 0.0) return 0.0;
      return D(v) * bracket_q(std::pow(v, alpha) / kr) * v;
    };
    return 2.0 * integrate_v(g);
  }

  // G(r, b) of the general form, K = beta r^{alpha (1 - eps)}.
  double g_general(double r) {
    const double k = beta * std::pow(r, alpha * (1.0 - eps));
    if (k <= 0.0) return 0.0;
    auto g = [&](double v) {
      if (v <= 0.0) return 0.0;
      const double m = std::min(v, J);
      const double va = std::pow(v, alpha);
      auto f = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double q = va / (k * std::pow(u, alpha * eps));
        return bracket_q(q) * u * std::exp(-kPi * c1_lambda * u * u);
      };
      const double inner = integrate(f, 0.0, m, u_spec).value / Fc(m);
      return D(v) * inner * v;
    };
    return 4.0 * kPi * lambda_b * kDistanceCorrection * integrate_v(g);
  }

  // (2 pi c1 lambda_b / F(sqrt(c1) J)) int_0^J r exp(-pi c1 lambda_b r^2 - pi lambda_d h(r)) dr
  double average_over_distance(const std::function<double(double)>& h) {
    auto f = [&](double r) { return r * std::exp(-kPi * c1_lambda * r * r - kPi * lambda_d * h(r)); };
    return 2.0 * kPi * c1_lambda / Fc(J) * integrate(f, 0.0, J, r_spec).value;
  }
};

}  // namespace

CellStatistics cell_statistics(const NetworkParams& params) {
  require_valid(params);
  CellStatistics s;
  s.area = fit_area_model(params.lambda_b, params.jm_radius);
  s.load = load_pmf(s.area, params.lambda_d);
  s.zeta_b = mean_inverse_load(s.load);
  s.mean_inverse_area = mean_inverse_area(s.area);
  return s;
}

double d2d_success(const NetworkParams& params) {
  require_valid(params);
  const double delta = params.delta();
  const double sinc = numerics::sinc_delta(delta);
  const double r2 = params.r_d * params.r_d;
  const double d2d_term =
      kPi * params.q_d * params.lambda_d_prime() * std::pow(params.beta_d, delta) * r2 / sinc;
  if (params.access_mode == AccessMode::Orthogonal) return std::exp(-d2d_term);

  const double x = kPi * params.lambda_b * params.jm_radius * params.jm_radius;
  const double eps = params.epsilon;
  // E[D^{2 eps}] for the serving distance truncated at J
  const double distance_moment =
      numerics::lower_incomplete_gamma_unnormalized(1.0 + eps, x) /
      (std::pow(kPi * params.lambda_b, eps) * params.coverage());
  const double update_term = kPi * params.lambda_b * std::pow(params.beta_d * params.power_ratio(), delta) *
                             r2 / sinc * distance_moment;
  return std::exp(-d2d_term - update_term);
}

double zeta_d(const NetworkParams& params, double zeta_b, bool eq15_as_printed) {
  if (!(zeta_b > 0.0 && zeta_b <= 1.0)) throw Error(ErrorCode::DomainError, "zeta_d: zeta_b must be in (0, 1]");
  const double f = params.coverage();
  if (eq15_as_printed) return params.q_d * f + params.q_d * (1.0 - zeta_b) * (1.0 - f);
  return params.q_d * (1.0 - f) + params.q_d * (1.0 - zeta_b) * f;
}

double interference_constant(double b, const NetworkParams& params, double zeta_d,
                             const numerics::SeriesOptions& opts) {
  if (params.access_mode == AccessMode::Orthogonal) return 0.0;
  const double theta = params.beta_b / params.power_ratio();
  return numerics::series_C(b, zeta_d, params.delta(), theta, opts);
}

double conditional_success_moment(double b, const NetworkParams& params, const CellStatistics& stats,
                                  const AnalyticOptions& opts) {
  require_valid(params);
  if (b == 0.0) return 1.0;
  if (b < 0.0 && stats.zeta_b >= 1.0 - 1e-9)
    throw Error(ErrorCode::SchedulerSaturated,
                "conditional_success_moment: zeta_b = 1, negative moments diverge (every cell holds one device)");
  opts.quad.check();

  const double zd = zeta_d(params, stats.zeta_b, opts.eq15_as_printed);
  const double c = interference_constant(b, params, zd, opts.series);

  MomentIntegrand m{};
  m.b = b;
  m.lambda_b = params.lambda_b;
  m.lambda_d = params.lambda_d;
  m.alpha = params.alpha;
  m.eps = params.epsilon;
  m.beta = params.beta_b;
  m.J = params.jm_radius;
  m.zeta_b = stats.zeta_b;
  m.inv_area = stats.mean_inverse_area;
  m.cov_J = params.coverage();
  m.c1_lambda = kDistanceCorrection * params.lambda_b;
  m.r_spec = opts.quad;
  m.v_spec = opts.quad.with_rel_tol(opts.quad.rel_tol * 0.1);
  m.u_spec = opts.quad.with_rel_tol(opts.quad.rel_tol * 0.01);

  const double eps = params.epsilon;
  const bool general = opts.moment_form == MomentForm::General;
  double result;
  if (!general && eps == 1.0) {
    result = std::exp(-kPi * params.lambda_d * (m.g_general(1.0) + c));
  } else if (!general && eps == 0.0) {
    result = m.average_over_distance([&](double r) { return m.g_hat(r) + r * r * c; });
  } else {
    result = m.average_over_distance(
        [&](double r) { return m.g_general(r) + std::pow(r, 2.0 * (1.0 - eps)) * c; });
  }
  if (!m.converged)
    throw numerics::QuadratureError(
        "conditional_success_moment: tolerance not met for b = " + std::to_string(b),
        QuadResult{result, std::abs(result) * opts.quad.rel_tol, 0, 0, false});
  return result;
}

double conditional_success_moment(double b, const NetworkParams& params, const AnalyticOptions& opts) {
  if (b == 0.0) {
    require_valid(params);
    return 1.0;
  }
  return conditional_success_moment(b, params, cell_statistics(params), opts);
}

Throughput throughput(const NetworkParams& params, double p_d, double zeta_d) {
  Throughput t;
  t.t_d = params.bandwidth * zeta_d * std::log2(1.0 + params.beta_d) * p_d;
  t.t_n = params.lambda_d * t.t_d;
  return t;
}

AchievableThroughput achievable_throughput(const NetworkParams& params, double zeta_d) {
  auto t_d = [&](double log_beta) {
    auto p = params;
    p.beta_d = std::pow(10.0, log_beta);
    return throughput(p, d2d_success(p), zeta_d).t_d;
  };
  const auto best = numerics::golden_section_maximize(t_d, -3.0, 3.0, 1e-3);
  AchievableThroughput a;
  a.beta_star = std::pow(10.0, best.x);
  a.t_d_star = best.value;
  a.t_n_star = params.lambda_d * best.value;
  return a;
}

ConditionalAoi conditional_mean_aoi(int n_cell, double p_b) {
  if (n_cell < 1) throw Error(ErrorCode::DomainError, "conditional_mean_aoi: n_cell must be >= 1");
  if (!(p_b >= 0.0 && p_b <= 1.0)) throw Error(ErrorCode::DomainError, "conditional_mean_aoi: p_b outside [0, 1]");
  ConditionalAoi a;
  if (p_b == 0.0) {
    a.infinite = true;
    a.mean = a.ex = a.ex2 = std::numeric_limits<double>::infinity();
    return a;
  }
  const double zeta = 1.0 / n_cell;
  a.ex = n_cell / p_b;
  // X is a Geom(p_b) sum of Geom(1/N) waiting times
  a.ex2 = (1.0 - zeta) / (zeta * zeta * p_b) + (2.0 - p_b) / (zeta * zeta * p_b * p_b);
  a.mean = a.ex;
  return a;
}

double aoi_spatial_moment(int n, const NetworkParams& params, const CellStatistics& stats,
                          const AnalyticOptions& opts) {
  if (n < 1) throw Error(ErrorCode::DomainError, "aoi_spatial_moment: n must be >= 1");
  return load_moment_conditional(stats.load, n) * conditional_success_moment(-n, params, stats, opts);
}

double aoi_spatial_moment(int n, const NetworkParams& params, const AnalyticOptions& opts) {
  return aoi_spatial_moment(n, params, cell_statistics(params), opts);
}

double aoi_mean_load_factor_variant(const NetworkParams& params, const CellStatistics& stats,
                                    const AnalyticOptions& opts) {
  const double j = params.jm_radius;
  const double load = params.density_ratio() * -std::expm1(-kPi * kDistanceCorrection * params.lambda_b * j * j);
  return load * conditional_success_moment(-1.0, params, stats, opts);
}

AnalyticReport analytic_report(const NetworkParams& params, const AnalyticOptions& opts,
                               const std::vector<double>& b_list, const std::vector<int>& n_list) {
  const auto stats = cell_statistics(params);
  AnalyticReport r;
  r.access_mode = params.access_mode;
  r.zeta_b = stats.zeta_b;
  r.zeta_d = zeta_d(params, stats.zeta_b, opts.eq15_as_printed);
  r.p_d = d2d_success(params);
  const auto t = throughput(params, r.p_d, r.zeta_d);
  r.t_d = t.t_d;
  r.t_n = t.t_n;
  r.achievable = achievable_throughput(params, r.zeta_d);

  for (double b : b_list) {
    r.c_b[b] = interference_constant(b, params, r.zeta_d, opts.series);
    r.m_b[b] = conditional_success_moment(b, params, stats, opts);
  }
  for (int n : n_list) {
    const auto it = r.m_b.find(static_cast<double>(-n));
    const double m = it != r.m_b.end() ? it->second : conditional_success_moment(-n, params, stats, opts);
    r.delta_n[n] = load_moment_conditional(stats.load, n) * m;
  }
  const auto it = r.m_b.find(-1.0);
  const double m1 = it != r.m_b.end() ? it->second : conditional_success_moment(-1.0, params, stats, opts);
  const double j = params.jm_radius;
  r.delta1_variant =
      params.density_ratio() * -std::expm1(-kPi * kDistanceCorrection * params.lambda_b * j * j) * m1;
  return r;
}

}  // namespace cellaoi
