#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "cellaoi/model.hpp"
#include "cellaoi/sim/network.hpp"

namespace cellaoi::sim {

struct SlotOptions {
  /// Evaluate the typical D2D link in every slot. The update link is
  /// evaluated whenever the typical device is scheduled.
  bool evaluate_d2d = true;
  /// Draw the whole transmitter field in every slot and keep a SlotOutcome
  /// per slot (slow; for inspection and tests).
  bool record_outcomes = false;
  bool record_aoi_path = false;
  /// Slots discarded before averaging the AoI; negative means
  /// min(10 N, n_slots / 2) with N the typical cell's load.
  int burn_in = -1;
};

struct SlotOutcome {
  std::vector<int> scheduled_device;     ///< per BS, -1 for an empty cell
  std::vector<std::uint8_t> d2d_active;  ///< per device
  bool typical_scheduled = false;
  double sir_at_typical_bs = std::numeric_limits<double>::quiet_NaN();
  double sir_at_typical_d2d_rx = std::numeric_limits<double>::quiet_NaN();
  bool update_success = false;
  bool d2d_success = false;
};

struct SlotRun {
  int n_slots = 0;
  int typical_load = 0;
  std::int64_t scheduled_slots = 0;   ///< slots with the typical device scheduled
  std::int64_t update_successes = 0;
  std::int64_t d2d_slots = 0;
  std::int64_t d2d_successes = 0;
  std::int64_t d2d_active_total = 0;   ///< D2D-active devices summed over field draws
  std::int64_t device_slot_total = 0;  ///< devices times field draws
  int burn_in = 0;
  double mean_aoi = std::numeric_limits<double>::quiet_NaN();  ///< temporal mean after burn-in
  std::vector<int> aoi_path;                        ///< A(0..n_slots), when recorded
  std::vector<std::int64_t> typical_cell_schedules;  ///< per member of the typical cell
  std::vector<SlotOutcome> outcomes;                 ///< when recorded

  /// Successes per scheduled slot (NaN when never scheduled).
  double update_success_rate() const;
  double d2d_success_rate() const;
};

/// Slot-synchronized evolution of one realization: scheduling, ALOHA for the
/// unscheduled devices, Rayleigh fading and the AoI of the typical device.
SlotRun run_slots(const Realization& realization, const NetworkParams& params, int n_slots, std::uint64_t seed,
                  const SlotOptions& options = {});

}  // namespace cellaoi::sim
