#include "cellaoi/jm_cell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "cellaoi/error.hpp"
#include "cellaoi/numerics/roots.hpp"

namespace cellaoi {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double lambda_b, double J, const char* who) {
  if (!(lambda_b > 0.0) || !(J > 0.0))
    throw Error(ErrorCode::DomainError, std::string(who) + ": lambda_b and J must be positive");
}

// 1 - (1 + x) e^{-x}, accurate for small x.
double one_minus_one_plus_x_exp(double x) {
  if (std::isinf(x)) return 1.0;
  if (x < 1e-2) {
    // sum_{k>=2} (-1)^k (k-1) x^k / k!
    double term = x * x / 2.0, sum = 0.0;
    for (int k = 2; k < 12; ++k) {
      sum += term;
      term *= -x * k / ((k - 1.0) * (k + 1.0));
    }
    return sum;
  }
  return -std::expm1(-x) - x * std::exp(-x);
}

// E|V_o|^2 * lambda_b^2 as a function of lambda_b J^2 only.
double second_moment_dimless(double lj2, const numerics::QuadratureSpec& spec) {
  auto f = [lj2](double u, double v) {
    const double su = std::sin(u), sv = std::sin(v);
    const double g = su * sv * std::sin(u + v);
    const double s = g + (kPi - v) * su * su + (kPi - u) * sv * sv;
    if (!(g > 0.0) || !(s > 0.0)) return 0.0;
    const double m = std::max(su, sv);
    return g / (s * s) * one_minus_one_plus_x_exp(lj2 * s / (m * m));
  };
  numerics::Region2D tri;
  tri.u_lo = 0.0;
  tri.u_hi = kPi;
  tri.v_hi = [](double u) { return kPi - u; };
  return 2.0 * kPi * numerics::integrate_2d(f, tri, spec).value;
}

// B_x(a, b) = int_0^x t^{a-1} (1-t)^{b-1} dt for 0 <= x <= 1/2. Truncated at
// 1/2 the integral exists for every real b; b <= 0 uses the positive series
// x^a/a 2F1(a, 1-b; a+1; x), whose term ratio tends to x.
double lower_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (b > 0.0) return boost::math::beta(a, b, x);
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 5000; ++k) {
    term *= (a + k) * (1.0 - b + k) / ((a + 1.0 + k) * (k + 1.0)) * x;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::pow(x, a) / a * sum;
}

// E[X] and E[X^2] of the beta law truncated at 1/2.
double ratio1(double a, double b) { return lower_beta(a + 1, b, 0.5) / lower_beta(a, b, 0.5); }
double ratio2(double a, double b) { return lower_beta(a + 2, b, 0.5) / lower_beta(a, b, 0.5); }

double log_poisson(int n, double mu) {
  if (mu == 0.0) return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return n * std::log(mu) - mu - std::lgamma(n + 1.0);
}

}  // namespace

double mean_area(double lambda_b, double J) {
  require_positive(lambda_b, J, "mean_area");
  return -std::expm1(-kPi * lambda_b * J * J) / lambda_b;
}

double second_moment_area(double lambda_b, double J, const numerics::QuadratureSpec& spec) {
  require_positive(lambda_b, J, "second_moment_area");
  return second_moment_dimless(lambda_b * J * J, spec) / (lambda_b * lambda_b);
}

double atom_probability(double lambda_b, double J) {
  if (!(lambda_b > 0.0) || !(J >= 0.0))
    throw Error(ErrorCode::DomainError, "atom_probability: lambda_b > 0 and J >= 0 required");
  return std::exp(-4.0 * kPi * lambda_b * J * J);
}

double truncated_beta(double a, double b) { return lower_beta(a, b, 0.5); }

AreaModel fit_area_model(double lambda_b, double J) {
  require_positive(lambda_b, J, "fit_area_model");
  if (std::isinf(J)) throw Error(ErrorCode::JmRadiusInfinite, "fit_area_model: J must be finite");
  AreaModel m;
  m.lambda_b = lambda_b;
  m.jm_radius = J;
  m.jm_area_max = kPi * J * J;
  m.support_scale = 2.0 * m.jm_area_max;
  m.atom_prob = atom_probability(lambda_b, J);
  m.mean_area = mean_area(lambda_b, J);
  m.second_moment_area = second_moment_area(lambda_b, J);

  // Everything below depends on lambda_b J^2 only.
  const double x = kPi * lambda_b * J * J;
  const double pe = m.atom_prob;
  const double a1 = -std::expm1(-x) / x;                                  // E|V|/A
  const double a2 = m.second_moment_area * lambda_b * lambda_b / (x * x);  // E|V|^2/A^2
  const double c1 = (a1 - pe) / (1.0 - pe);
  const double c2 = (a2 - pe) / (1.0 - pe);
  m.cond_mean = c1 * m.jm_area_max;
  m.cond_second_moment = c2 * m.jm_area_max * m.jm_area_max;

  const double mu = c1 / 2.0, s = c2 / 4.0;  // moments of |V|/(2A) given no atom
  const double var = s - mu * mu;
  if (!(var > 0.0) || !(mu > 0.0))
    throw Error(ErrorCode::DegenerateMoments,
                "fit_area_model: conditional area variance is not positive (lambda_b J^2 = " +
                    std::to_string(lambda_b * J * J) + ")");

  // Seed from the untruncated beta law with the same two moments. kappa1 > 0
  // is solved for in log space; kappa2 may be any real (small cells pile
  // their mass up against the truncation point and need kappa2 <= 0).
  const double k = mu * (1.0 - mu) / var - 1.0;
  numerics::Vec2 init{0.0, 1.0};
  if (k > 0.0) init = {std::log(mu * k), (1.0 - mu) * k};

  auto residual = [mu, s](double l1, double k2) -> numerics::Vec2 {
    const double k1 = std::exp(l1);
    return {ratio1(k1, k2) / mu - 1.0, ratio2(k1, k2) / s - 1.0};
  };
  numerics::RootOptions opts;
  opts.tol = 1e-13;
  const auto root = numerics::solve_2d_root(residual, init, opts);
  m.kappa1 = std::exp(root.x);
  m.kappa2 = root.y;
  m.beta_norm = truncated_beta(m.kappa1, m.kappa2);
  return m;
}

AreaDensity area_pdf(const AreaModel& model, double v) {
  const double a = model.jm_area_max;
  if (!(v >= 0.0) || v > a) throw Error(ErrorCode::DomainError, "area_pdf: v outside [0, pi J^2]");
  AreaDensity out;
  out.at_atom = (v == a);
  out.atom_mass = out.at_atom ? model.atom_prob : 0.0;
  if (model.atom_prob >= 1.0) return out;
  const double x = v / model.support_scale;
  if (x == 0.0) {
    out.density = model.kappa1 > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
    if (model.kappa1 == 1.0)
      out.density = (1.0 - model.atom_prob) / (model.support_scale * model.beta_norm);
    return out;
  }
  const double log_kernel = (model.kappa1 - 1.0) * std::log(x) + (model.kappa2 - 1.0) * std::log1p(-x);
  out.density = (1.0 - model.atom_prob) * std::exp(log_kernel) / (model.support_scale * model.beta_norm);
  return out;
}

double area_cdf(const AreaModel& model, double v) {
  if (v < 0.0) return 0.0;
  if (v >= model.jm_area_max) return 1.0;
  if (model.atom_prob >= 1.0) return 0.0;
  const double x = v / model.support_scale;
  return (1.0 - model.atom_prob) * lower_beta(model.kappa1, model.kappa2, x) / model.beta_norm;
}

CellLoadPmf load_pmf(const AreaModel& model, double lambda_d, double tail_tol) {
  if (!(lambda_d >= 0.0)) throw Error(ErrorCode::DomainError, "load_pmf: lambda_d must be non-negative");
  const double mu_max = lambda_d * model.jm_area_max;

  // N is stochastically dominated by Poisson(lambda_d pi J^2).
  int n_max = 1;
  while (mu_max > 0.0 && boost::math::gamma_p(n_max + 1.0, mu_max) > tail_tol) ++n_max;

  CellLoadPmf pmf;
  pmf.n_max = n_max;
  pmf.tail_mass = mu_max > 0.0 ? boost::math::gamma_p(n_max + 1.0, mu_max) : 0.0;
  pmf.probs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);

  const double pe = model.atom_prob;
  const double k1 = model.kappa1, k2 = model.kappa2;
  const double log_norm = std::log(model.beta_norm);
  const double mu2 = lambda_d * model.support_scale;

  numerics::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  spec.abs_tol = 1e-16;
  for (int n = 0; n <= n_max; ++n) {
    double p = pe * std::exp(log_poisson(n, mu_max));
    if (pe < 1.0) {
      auto integrand = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double lg = log_poisson(n, mu2 * x) + (k1 - 1.0) * std::log(x) + (k2 - 1.0) * std::log1p(-x) - log_norm;
        return std::exp(lg);
      };
      p += (1.0 - pe) * numerics::integrate_1d(integrand, 0.0, 0.5, spec).value;
    }
    pmf.probs[static_cast<std::size_t>(n)] = p;
  }
  return pmf;
}

CellLoadPmf load_pmf(double lambda_b, double lambda_d, double J) {
  return load_pmf(fit_area_model(lambda_b, J), lambda_d);
}

namespace {

double occupied_mass(const CellLoadPmf& pmf) {
  double occ = 0.0;
  for (int m = 1; m <= pmf.n_max; ++m) occ += pmf.prob(m);
  if (occ < 1e-12) throw Error(ErrorCode::ZeroOccupancy, "cell load: P[N >= 1] is below 1e-12");
  return occ;
}

}  // namespace

double load_moment_conditional(const CellLoadPmf& pmf, int n) {
  if (n < 1) throw Error(ErrorCode::DomainError, "load_moment_conditional: n must be >= 1");
  const double occ = occupied_mass(pmf);
  double sum = 0.0;
  for (int m = 1; m <= pmf.n_max; ++m) sum += std::pow(static_cast<double>(m), n) * pmf.prob(m);
  return sum / occ;
}

double mean_inverse_load(const CellLoadPmf& pmf) {
  const double occ = occupied_mass(pmf);
  double sum = 0.0;
  for (int m = 1; m <= pmf.n_max; ++m) sum += pmf.prob(m) / m;
  return std::min(1.0, sum / occ);
}

double mean_inverse_area(const AreaModel& model) {
  const double a = model.jm_area_max;
  if (model.atom_prob >= 1.0) return 1.0 / a;
  if (!(model.kappa1 > 1.0 + 1e-6))
    throw Error(ErrorCode::NonIntegrable,
                "mean_inverse_area: kappa1 = " + std::to_string(model.kappa1) +
                    " <= 1, E[1/|V_o|] diverges under the fitted model; estimate it by Monte Carlo instead");
  const double k1 = model.kappa1, k2 = model.kappa2;
  const double r = lower_beta(k1 - 1.0, k2, 0.5) / model.beta_norm;
  return model.atom_prob / a + (1.0 - model.atom_prob) * r / model.support_scale;
}

double interferer_intensity(double r, const AreaModel& model) {
  if (!(r >= 0.0)) throw Error(ErrorCode::DomainError, "interferer_intensity: r must be non-negative");
  const double cov = -std::expm1(-kPi * model.lambda_b * model.jm_radius * model.jm_radius);
  return cov * -std::expm1(-2.0 * kPi * mean_inverse_area(model) * r * r);
}

}  // namespace cellaoi
