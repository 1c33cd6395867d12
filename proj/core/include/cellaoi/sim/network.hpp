#pragma once

#include <cstdint>
#include <vector>

#include "cellaoi/model.hpp"

namespace cellaoi::sim {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Squared distance on the torus [0, side)^2.
double torus_distance2(Point a, Point b, double side) noexcept;

/// Window side 50 / sqrt(lambda_b): about 2500 BSs per realization.
double default_window_side(double lambda_b) noexcept;

/// One sampled network on a torus, re-centered so that the typical BS sits at
/// the window center.
struct Realization {
  double window_side = 0.0;
  std::vector<Point> bs_points;
  std::vector<Point> device_tx_points;
  std::vector<Point> d2d_rx_offsets;  ///< receiver position minus transmitter position, length r_d
  std::vector<int> serving_bs;        ///< nearest BS if it lies within J, else -1
  std::vector<double> serving_distance;  ///< distance to serving_bs (NaN when unassigned)
  std::vector<std::vector<int>> cell_members;  ///< devices of each BS's JM cell

  int typical_bs = -1;
  int typical_device = -1;  ///< uniformly chosen device of the typical cell
  /// Typical D2D link: an added, always-active transmitter whose receiver is
  /// placed uniformly in the window.
  Point typical_d2d_rx;
  Point typical_d2d_tx;

  std::uint64_t seed = 0;
  int draws = 1;  ///< network draws needed to find a non-empty typical cell

  int typical_load() const { return static_cast<int>(cell_members[static_cast<std::size_t>(typical_bs)].size()); }
  /// Fraction of devices inside some JM cell.
  double assigned_fraction() const;
};

/// Samples BSs and devices as PPPs on the torus, associates every device with
/// its nearest BS when that BS is within J, and picks the typical BS uniformly
/// among BSs with a non-empty cell. Redraws up to 100 times, then throws
/// EMPTY_TYPICAL_CELL.
Realization sample_network(const NetworkParams& params, double window_side, std::uint64_t seed);

/// Re-translates every point by (dx, dy) modulo the window.
Realization shifted(const Realization& r, double dx, double dy);

}  // namespace cellaoi::sim
