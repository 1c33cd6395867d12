#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cellaoi/model.hpp"
#include "cellaoi/sim/network.hpp"
#include "cellaoi/sim/stats.hpp"

namespace cellaoi::sim {

struct SimConfig {
  int n_realizations = 2000;
  int n_slots = 200;
  std::uint64_t master_seed = 1;
  double window_side = 0.0;  ///< 0: default_window_side(lambda_b)
  unsigned threads = 0;      ///< 0: hardware concurrency
};

/// Success frequency of the typical D2D link over realizations and slots.
SimEstimate estimate_d2d_success(const NetworkParams& params, const SimConfig& cfg);

struct MomentEstimates {
  std::map<double, SimEstimate> moments;  ///< b -> mean of P^b over realizations
  int zero_success_realizations = 0;      ///< P^ = 0 (left out of negative moments)
  int never_scheduled_realizations = 0;   ///< left out of every moment
  std::vector<double> success_rates;      ///< per realization (NaN if never scheduled)
  SimEstimate d2d_transmit_frequency;     ///< fraction of devices D2D-active per slot
};

/// Empirical moments of the per-realization update success rate P^ of the
/// typical device. Throws DEGENERATE_SAMPLES when a negative b is requested
/// and more than 5% of the realizations have P^ = 0.
MomentEstimates estimate_conditional_success_moments(const NetworkParams& params, const std::vector<double>& b_list,
                                                     const SimConfig& cfg);

struct AoiEstimates {
  std::map<int, SimEstimate> moments;    ///< n -> mean of (temporal mean AoI)^n
  SimEstimate load_conditional;          ///< mean load of the typical cell
  std::vector<double> temporal_means;    ///< per realization
  std::vector<int> loads;                ///< per realization
  std::vector<double> success_rates;     ///< per realization
  std::vector<double> joint;             ///< N / P^ from the same realization
  std::vector<double> independent;       ///< N / P^ with P^ taken from a permuted realization
  double ks_joint_vs_independent = 0.0;
  int low_schedule_realizations = 0;     ///< typical device scheduled fewer than 20 times
};

AoiEstimates estimate_aoi_moments(const NetworkParams& params, const std::vector<int>& n_list, const SimConfig& cfg);

struct SimulationSummary {
  SimEstimate p_d;
  MomentEstimates moments;  ///< negative b are left out when degenerate
  bool negative_moments_degenerate = false;
  std::string degenerate_message;
  AoiEstimates aoi;
};

/// All simulated metrics from a single set of realizations (D2D link,
/// update-link moments, AoI moments and the independence diagnostic).
SimulationSummary simulate_metrics(const NetworkParams& params, const std::vector<double>& b_list,
                                   const std::vector<int>& n_list, const SimConfig& cfg);

struct AreaLoadSamples {
  std::vector<double> areas;      ///< |V_o| per sampled typical cell
  std::vector<int> loads;         ///< devices in the cell
  std::vector<std::uint8_t> full_disc;  ///< cell equals the disc B(J)
  SimEstimate mean_area;
  SimEstimate second_moment_area;
  SimEstimate mean_inverse_area;
  double atom_fraction = 0.0;
  double empty_fraction = 0.0;
  SimEstimate mean_inverse_load;  ///< over non-empty cells
};

/// Typical JM cells built from the Palm distribution (BS at the origin plus a
/// PPP of neighbours); the area is the exact area of the Voronoi polygon
/// intersected with the disc of radius J, and the load is Poisson given it.
AreaLoadSamples estimate_area_and_load(const NetworkParams& params, int n_realizations, std::uint64_t seed);

/// Area of the Voronoi cell of the origin among `neighbours`, clipped to the
/// disc of radius J centred at the origin.
double jm_cell_area(const std::vector<Point>& neighbours, double J);

}  // namespace cellaoi::sim
