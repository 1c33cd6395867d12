#pragma once

#include <map>
#include <vector>

#include "cellaoi/jm_cell.hpp"
#include "cellaoi/model.hpp"
#include "cellaoi/numerics/quadrature.hpp"
#include "cellaoi/numerics/special.hpp"

namespace cellaoi {

/// Corrected density factor for the distance from a BS to a uniform point of
/// its Voronoi cell.
inline constexpr double kDistanceCorrection = 9.0 / 7.0;

/// Which integral form evaluates M_b. Auto uses the one-dimensional forms at
/// epsilon = 0 and epsilon = 1 and the nested form elsewhere.
enum class MomentForm { Auto, General };

struct AnalyticOptions {
  /// Use q_d F(J) + q_d (1 - zeta_b)(1 - F(J)) for zeta_d instead of the
  /// default q_d (1 - F(J)) + q_d (1 - zeta_b) F(J).
  bool eq15_as_printed = false;
  MomentForm moment_form = MomentForm::Auto;
  numerics::QuadratureSpec quad = numerics::QuadratureSpec{}.with_rel_tol(1e-6);
  numerics::SeriesOptions series{};
};

/// Cell quantities shared by every M_b and Delta_n evaluation.
struct CellStatistics {
  AreaModel area;
  CellLoadPmf load;
  double zeta_b = 1.0;              ///< E[1/N | N >= 1]
  double mean_inverse_area = 0.0;   ///< E[1/|V_o|]
};

CellStatistics cell_statistics(const NetworkParams& params);

/// Success probability of the typical D2D link.
double d2d_success(const NetworkParams& params);

/// Probability that a device transmits a regular D2D message in a slot.
double zeta_d(const NetworkParams& params, double zeta_b, bool eq15_as_printed = false);

/// Interference constant C(b) of D2D transmitters at the typical BS
/// (zero under orthogonal access).
double interference_constant(double b, const NetworkParams& params, double zeta_d,
                             const numerics::SeriesOptions& opts = {});

/// b-th moment of the conditional success probability of the typical update
/// link. Throws SCHEDULER_SATURATED for b < 0 when zeta_b is 1.
double conditional_success_moment(double b, const NetworkParams& params, const CellStatistics& stats,
                                  const AnalyticOptions& opts = {});
double conditional_success_moment(double b, const NetworkParams& params, const AnalyticOptions& opts = {});

struct Throughput {
  double t_d = 0.0;  ///< bits/s
  double t_n = 0.0;  ///< bits/s/m^2
};

Throughput throughput(const NetworkParams& params, double p_d, double zeta_d);

struct AchievableThroughput {
  double beta_star = 0.0;  ///< maximizing beta_d (linear)
  double t_d_star = 0.0;
  double t_n_star = 0.0;
};

/// Maximizes T_d over beta_d in [1e-3, 1e3] by golden section on log10(beta_d)
/// with a 0.01 dB bracket tolerance.
AchievableThroughput achievable_throughput(const NetworkParams& params, double zeta_d);

struct ConditionalAoi {
  double mean = 0.0;        ///< N / P_b  [slots]
  double ex = 0.0;          ///< E[X], X the inter-delivery time
  double ex2 = 0.0;         ///< E[X^2]
  bool infinite = false;    ///< P_b = 0
};

/// Temporal mean AoI of a link that is scheduled with probability 1/n_cell and
/// succeeds with probability p_b when scheduled.
ConditionalAoi conditional_mean_aoi(int n_cell, double p_b);

/// Delta_n = E[N^n | N >= 1] M_{-n}.
double aoi_spatial_moment(int n, const NetworkParams& params, const CellStatistics& stats,
                          const AnalyticOptions& opts = {});
double aoi_spatial_moment(int n, const NetworkParams& params, const AnalyticOptions& opts = {});

/// Alternative mean AoI (lambda_d/lambda_b)(1 - exp(-pi c1 lambda_b J^2)) M_{-1}.
double aoi_mean_load_factor_variant(const NetworkParams& params, const CellStatistics& stats,
                                    const AnalyticOptions& opts = {});

struct AnalyticReport {
  AccessMode access_mode = AccessMode::CoChannel;
  double p_d = 0.0;
  double zeta_d = 0.0;
  double zeta_b = 0.0;
  std::map<double, double> c_b;
  std::map<double, double> m_b;
  double t_d = 0.0;
  double t_n = 0.0;
  AchievableThroughput achievable;
  std::map<int, double> delta_n;
  double delta1_variant = 0.0;  ///< aoi_mean_load_factor_variant
};

AnalyticReport analytic_report(const NetworkParams& params, const AnalyticOptions& opts = {},
                               const std::vector<double>& b_list = {1.0, 2.0, -1.0, -2.0},
                               const std::vector<int>& n_list = {1, 2});

}  // namespace cellaoi
