#pragma once

#include <vector>

#include "cellaoi/numerics/quadrature.hpp"

namespace cellaoi {

/// Distribution of the typical JM cell area |V_o|: an atom at the full disc
/// area pi J^2 plus a beta law on [0, 2 pi J^2] truncated at pi J^2.
struct AreaModel {
  double lambda_b = 0.0;
  double jm_radius = 0.0;
  double atom_prob = 0.0;           ///< P[|V_o| = pi J^2] = exp(-4 pi lambda_b J^2)
  double kappa1 = 1.0;
  double kappa2 = 1.0;              ///< any real; <= 0 when small cells crowd the truncation point
  double jm_area_max = 0.0;         ///< pi J^2
  double support_scale = 0.0;       ///< 2 pi J^2
  double mean_area = 0.0;           ///< E|V_o|
  double second_moment_area = 0.0;  ///< E|V_o|^2
  double cond_mean = 0.0;           ///< E[|V_o| | no atom]
  double cond_second_moment = 0.0;  ///< E[|V_o|^2 | no atom]
  double beta_norm = 1.0;           ///< int_0^{1/2} x^{k1-1} (1-x)^{k2-1} dx
};

/// (1 - exp(-pi lambda_b J^2)) / lambda_b
double mean_area(double lambda_b, double J);

/// Second moment of the JM cell area, from the double integral over the
/// triangle 0 <= v <= pi - u of the two-disc union-area parametrization.
double second_moment_area(double lambda_b, double J,
                          const numerics::QuadratureSpec& spec = numerics::QuadratureSpec{}.with_rel_tol(1e-9));

/// exp(-4 pi lambda_b J^2): no other BS within 2J, the cell is the whole disc.
double atom_probability(double lambda_b, double J);

/// Moment-matched area model. Throws DEGENERATE_MOMENTS when the
/// conditional variance is not positive and NO_CONVERGENCE from the solver.
AreaModel fit_area_model(double lambda_b, double J);

/// Unnormalized truncated beta integral int_0^{1/2} x^{a-1} (1-x)^{b-1} dx.
double truncated_beta(double a, double b);

struct AreaDensity {
  double density = 0.0;    ///< continuous part at v [1/m^2]
  bool at_atom = false;    ///< v coincides with pi J^2
  double atom_mass = 0.0;  ///< mass carried by the atom (reported when at_atom)
};

AreaDensity area_pdf(const AreaModel& model, double v);
/// P[|V_o| <= v], atom included for v >= pi J^2.
double area_cdf(const AreaModel& model, double v);

/// Distribution of the number of devices in the typical JM cell.
struct CellLoadPmf {
  std::vector<double> probs;  ///< probs[n] = P[N = n], n = 0..n_max
  int n_max = 0;
  double tail_mass = 0.0;     ///< upper bound on P[N > n_max]

  double prob(int n) const noexcept {
    return n >= 0 && n <= n_max ? probs[static_cast<std::size_t>(n)] : 0.0;
  }
};

CellLoadPmf load_pmf(const AreaModel& model, double lambda_d, double tail_tol = 1e-11);
CellLoadPmf load_pmf(double lambda_b, double lambda_d, double J);

/// E[N^n | N >= 1]; throws ZERO_OCCUPANCY when P[N >= 1] < 1e-12.
double load_moment_conditional(const CellLoadPmf& pmf, int n);

/// zeta_b = E[1/N | N >= 1].
double mean_inverse_load(const CellLoadPmf& pmf);

/// E[1/|V_o|]; throws NONINTEGRABLE when kappa1 <= 1 + 1e-6.
double mean_inverse_area(const AreaModel& model);

/// D(r;J) = F(J) (1 - exp(-2 pi E[1/|V_o|] r^2)).
double interferer_intensity(double r, const AreaModel& model);

}  // namespace cellaoi
