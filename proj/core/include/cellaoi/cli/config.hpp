#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellaoi/model.hpp"

namespace cellaoi::cli {

enum class Command { Analytic, Simulate, Compare, Sweep, FitArea };

std::string_view to_string(Command c) noexcept;

/// Relative tolerances of the `compare` command.
struct CompareTolerances {
  double p_d = 0.05;
  double m_1 = 0.10;
  double m_2 = 0.10;
  double delta_1 = 0.15;
};

/// Parameters given relative to others; resolved after all keys are read.
struct DerivedSettings {
  std::optional<double> density_ratio;  ///< lambda_d / lambda_b
  std::optional<double> power_ratio;    ///< p_b / p_d, sets p_b
  std::optional<double> coverage;       ///< F(J), sets J
  bool jm_radius_set = false;           ///< J given explicitly (p_max then does not override it)
};

struct ExperimentConfig {
  NetworkParams params;
  DerivedSettings derived;
  Command command = Command::Analytic;
  std::string preset;

  /// Values are kept as text and applied exactly like `key = value` lines, so
  /// dB suffixes and access-mode names work in sweeps.
  std::string sweep_param;
  std::vector<std::string> sweep_values;
  /// Optional second axis; rows cover the product of both axes.
  std::string grid_param;
  std::vector<std::string> grid_values;

  int n_realizations = 2000;
  int n_slots = 200;
  std::uint64_t master_seed = 1;
  double window_factor = 50.0;  ///< window side = window_factor / sqrt(lambda_b)
  unsigned threads = 0;
  std::string output_path;
  bool eq15_as_printed = false;
  bool corollary5_variant = false;
  double quad_rel_tol = 1e-6;
  CompareTolerances tolerances;
};

/// Parses `key = value` lines with `#` comments. Unknown keys, malformed
/// values and invalid parameters are errors carrying the line number; the
/// result is validated (including every sweep point).
ExperimentConfig parse_config(std::string_view text);

/// Applies one setting; throws UNKNOWN_KEY / INVALID_VALUE / UNKNOWN_PARAM.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Loads a named preset reproducing one of the figure data sets.
void apply_preset(ExperimentConfig& cfg, std::string_view name);
std::vector<std::string> preset_names();

/// Network parameters with the derived settings resolved.
NetworkParams resolved_params(const ExperimentConfig& cfg);

/// Keys accepted as sweep or grid parameters.
bool is_sweepable(std::string_view key);

/// One point of the sweep x grid product.
struct SweepPoint {
  std::vector<std::pair<std::string, std::string>> labels;  ///< (param, value text)
  NetworkParams params;
};

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& cfg);

/// Throws INVALID_PARAMS listing every failing point when any is invalid.
void validate_config(const ExperimentConfig& cfg);

}  // namespace cellaoi::cli
