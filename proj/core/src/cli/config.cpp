#include "cellaoi/cli/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "cellaoi/error.hpp"

namespace cellaoi::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

[[noreturn]] void invalid(std::string_view key, std::string_view value, std::string_view why) {
  throw Error(ErrorCode::InvalidValue,
              std::string(key) + " = '" + std::string(value) + "': " + std::string(why));
}

enum class Unit { None, Decibel };

// "<number> [dB|dBm]"; the suffix is only accepted where `allow_db` is set.
double parse_number(std::string_view key, std::string_view text, bool allow_db) {
  auto s = trim(text);
  Unit unit = Unit::None;
  for (std::string_view suffix : {"dbm", "db"}) {
    if (s.size() > suffix.size() && lower(s.substr(s.size() - suffix.size())) == suffix) {
      if (!allow_db) invalid(key, text, "a dB suffix is not accepted for this key");
      unit = Unit::Decibel;
      s = trim(s.substr(0, s.size() - suffix.size()));
      break;
    }
  }
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) invalid(key, text, "not a number");
  if (unit == Unit::Decibel) v = db_to_linear(v);
  return v;
}

long long parse_integer(std::string_view key, std::string_view text) {
  const auto s = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) invalid(key, text, "not an integer");
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const auto s = lower(trim(text));
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  invalid(key, text, "expected true or false");
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)>;

Setter number(double NetworkParams::*field, bool allow_db = false) {
  return [field, allow_db](ExperimentConfig& c, std::string_view k, std::string_view v) {
    c.params.*field = parse_number(k, v, allow_db);
  };
}

const std::map<std::string, Setter, std::less<>>& network_setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"lambda_b", number(&NetworkParams::lambda_b)},
      {"lambda_d",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.params.lambda_d = parse_number(k, v, false);
         c.derived.density_ratio.reset();
       }},
      {"q_d", number(&NetworkParams::q_d)},
      {"r_d", number(&NetworkParams::r_d)},
      {"alpha", number(&NetworkParams::alpha)},
      {"epsilon", number(&NetworkParams::epsilon)},
      {"p_b",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.params.p_b = parse_number(k, v, true);
         c.derived.power_ratio.reset();
       }},
      {"p_d", number(&NetworkParams::p_d, true)},
      {"p_max",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.params.p_max = parse_number(k, v, true); }},
      {"jm_radius",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.params.jm_radius = parse_number(k, v, false);
         c.derived.coverage.reset();
         c.derived.jm_radius_set = true;
       }},
      {"beta_b", number(&NetworkParams::beta_b, true)},
      {"beta_d", number(&NetworkParams::beta_d, true)},
      {"bandwidth", number(&NetworkParams::bandwidth)},
      {"access_mode",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         const auto s = lower(trim(v));
         if (s == "co-channel" || s == "cochannel" || s == "co_channel")
           c.params.access_mode = AccessMode::CoChannel;
         else if (s == "orthogonal")
           c.params.access_mode = AccessMode::Orthogonal;
         else
           invalid(k, v, "expected co-channel or orthogonal");
       }},
      {"density_ratio",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.derived.density_ratio = parse_number(k, v, false);
       }},
      {"power_ratio",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.derived.power_ratio = parse_number(k, v, true);
       }},
      {"coverage",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.derived.coverage = parse_number(k, v, false);
         c.derived.jm_radius_set = true;
       }},
  };
  return table;
}

Command parse_command(std::string_view k, std::string_view v) {
  const auto s = lower(trim(v));
  if (s == "analytic") return Command::Analytic;
  if (s == "simulate") return Command::Simulate;
  if (s == "compare") return Command::Compare;
  if (s == "sweep") return Command::Sweep;
  if (s == "fit-area" || s == "fit_area") return Command::FitArea;
  invalid(k, v, "expected analytic, simulate, compare, sweep or fit-area");
}

const std::map<std::string, Setter, std::less<>>& experiment_setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"command", [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.command = parse_command(k, v); }},
      {"preset", [](ExperimentConfig& c, std::string_view, std::string_view v) { apply_preset(c, trim(v)); }},
      {"sweep_param",
       [](ExperimentConfig& c, std::string_view, std::string_view v) {
         const auto p = trim(v);
         if (!is_sweepable(p))
           throw Error(ErrorCode::UnknownParam, "sweep_param '" + std::string(p) + "' is not a network parameter");
         c.sweep_param = std::string(p);
       }},
      {"sweep_values",
       [](ExperimentConfig& c, std::string_view, std::string_view v) { c.sweep_values = split_list(v); }},
      {"grid_param",
       [](ExperimentConfig& c, std::string_view, std::string_view v) {
         const auto p = trim(v);
         if (!is_sweepable(p))
           throw Error(ErrorCode::UnknownParam, "grid_param '" + std::string(p) + "' is not a network parameter");
         c.grid_param = std::string(p);
       }},
      {"grid_values", [](ExperimentConfig& c, std::string_view, std::string_view v) { c.grid_values = split_list(v); }},
      {"n_realizations",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         const auto n = parse_integer(k, v);
         if (n < 1 || n > 100000000) invalid(k, v, "must be between 1 and 1e8");
         c.n_realizations = static_cast<int>(n);
       }},
      {"n_slots",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         const auto n = parse_integer(k, v);
         if (n < 1 || n > 100000000) invalid(k, v, "must be between 1 and 1e8");
         c.n_slots = static_cast<int>(n);
       }},
      {"master_seed",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         const auto n = parse_integer(k, v);
         if (n < 0) invalid(k, v, "must be non-negative");
         c.master_seed = static_cast<std::uint64_t>(n);
       }},
      {"window_factor",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.window_factor = parse_number(k, v, false);
         if (!(c.window_factor * c.window_factor >= 200.0)) invalid(k, v, "needs window_factor^2 >= 200");
       }},
      {"threads",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         const auto n = parse_integer(k, v);
         if (n < 0 || n > 4096) invalid(k, v, "must be between 0 and 4096");
         c.threads = static_cast<unsigned>(n);
       }},
      {"output_path", [](ExperimentConfig& c, std::string_view, std::string_view v) { c.output_path = std::string(trim(v)); }},
      {"eq15_as_printed",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.eq15_as_printed = parse_bool(k, v); }},
      {"corollary5_variant",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.corollary5_variant = parse_bool(k, v); }},
      {"quad_rel_tol",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.quad_rel_tol = parse_number(k, v, false);
         if (!(c.quad_rel_tol > 0.0 && c.quad_rel_tol < 1.0)) invalid(k, v, "must be in (0, 1)");
       }},
      {"tol_p_d",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.tolerances.p_d = parse_number(k, v, false); }},
      {"tol_m_1",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.tolerances.m_1 = parse_number(k, v, false); }},
      {"tol_m_2",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.tolerances.m_2 = parse_number(k, v, false); }},
      {"tol_delta_1",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.tolerances.delta_1 = parse_number(k, v, false);
       }},
  };
  return table;
}

struct Preset {
  const char* name;
  std::vector<std::pair<const char*, const char*>> settings;
};

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"fig4_left",
       {{"sweep_param", "beta_d"},
        {"sweep_values", "-10 dB, -5 dB, 0 dB, 5 dB, 10 dB"},
        {"grid_param", "epsilon"},
        {"grid_values", "0, 0.5, 1"}}},
      {"fig4_mid",
       {{"sweep_param", "beta_b"},
        {"sweep_values", "-10 dB, -5 dB, 0 dB, 3 dB, 6 dB, 10 dB"},
        {"grid_param", "epsilon"},
        {"grid_values", "0, 0.3, 0.6, 1"}}},
      {"fig6_left",
       {{"sweep_param", "beta_b"},
        {"sweep_values", "-10 dB, -5 dB, 0 dB, 3 dB, 6 dB, 10 dB"},
        {"grid_param", "epsilon"},
        {"grid_values", "0, 1"}}},
      {"fig6_mid", {{"sweep_param", "jm_radius"}, {"sweep_values", "20, 30, 40, 50, 60, 80, 100"}}},
      {"fig6_right", {{"sweep_param", "power_ratio"}, {"sweep_values", "-20 dB, -10 dB, 0 dB, 10 dB, 20 dB"}}},
      {"fig7",
       {{"sweep_param", "density_ratio"},
        {"sweep_values", "5, 10, 20, 40"},
        {"grid_param", "coverage"},
        {"grid_values", "0.2, 0.4, 0.6"}}},
      {"fig7_access",
       {{"sweep_param", "density_ratio"},
        {"sweep_values", "5, 10, 20, 40"},
        {"grid_param", "access_mode"},
        {"grid_values", "co-channel, orthogonal"}}},
      {"fig3", {{"density_ratio", "40"}, {"epsilon", "0"}, {"q_d", "0"}, {"n_slots", "1000"}}},
  };
  return table;
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Analytic: return "analytic";
    case Command::Simulate: return "simulate";
    case Command::Compare: return "compare";
    case Command::Sweep: return "sweep";
    case Command::FitArea: return "fit-area";
  }
  return "?";
}

bool is_sweepable(std::string_view key) { return network_setters().count(key) > 0; }

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  if (auto it = network_setters().find(key); it != network_setters().end()) {
    it->second(cfg, key, value);
    return;
  }
  if (auto it = experiment_setters().find(key); it != experiment_setters().end()) {
    it->second(cfg, key, value);
    return;
  }
  throw Error(ErrorCode::UnknownKey, "unknown key '" + std::string(key) + "'");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : presets()) out.emplace_back(p.name);
  return out;
}

void apply_preset(ExperimentConfig& cfg, std::string_view name) {
  for (const auto& p : presets()) {
    if (name != p.name) continue;
    cfg.preset = p.name;
    for (const auto& [k, v] : p.settings) apply_setting(cfg, k, v);
    return;
  }
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::InvalidValue, "unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

NetworkParams resolved_params(const ExperimentConfig& cfg) {
  NetworkParams p = cfg.params;
  if (cfg.derived.density_ratio) p.lambda_d = *cfg.derived.density_ratio * p.lambda_b;
  if (cfg.derived.power_ratio) p.p_b = *cfg.derived.power_ratio * p.p_d;
  if (cfg.derived.coverage) {
    const double c = *cfg.derived.coverage;
    p.jm_radius = (c > 0.0 && c < 1.0) ? std::sqrt(-std::log1p(-c) / (std::numbers::pi * p.lambda_b))
                                       : std::numeric_limits<double>::quiet_NaN();
  } else if (p.p_max && !cfg.derived.jm_radius_set) {
    p.jm_radius = jm_radius_from_power(*p.p_max, p.p_b, p.alpha, p.epsilon);
  }
  return p;
}

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& cfg) {
  std::vector<std::string> sweep = cfg.sweep_values, grid = cfg.grid_values;
  if (cfg.sweep_param.empty()) sweep = {""};
  if (cfg.grid_param.empty()) grid = {""};
  std::vector<SweepPoint> out;
  for (const auto& g : grid) {
    for (const auto& s : sweep) {
      ExperimentConfig c = cfg;
      SweepPoint pt;
      if (!cfg.grid_param.empty()) {
        apply_setting(c, cfg.grid_param, g);
        pt.labels.emplace_back(cfg.grid_param, g);
      }
      if (!cfg.sweep_param.empty()) {
        apply_setting(c, cfg.sweep_param, s);
        pt.labels.emplace_back(cfg.sweep_param, s);
      }
      pt.params = resolved_params(c);
      out.push_back(std::move(pt));
    }
  }
  return out;
}

void validate_config(const ExperimentConfig& cfg) {
  if (!cfg.sweep_param.empty() && cfg.sweep_values.empty())
    throw Error(ErrorCode::InvalidValue, "sweep_param '" + cfg.sweep_param + "' has no sweep_values");
  if (cfg.sweep_param.empty() && !cfg.sweep_values.empty())
    throw Error(ErrorCode::InvalidValue, "sweep_values given without sweep_param");
  if (!cfg.grid_param.empty() && cfg.grid_values.empty())
    throw Error(ErrorCode::InvalidValue, "grid_param '" + cfg.grid_param + "' has no grid_values");
  if (cfg.grid_param.empty() && !cfg.grid_values.empty())
    throw Error(ErrorCode::InvalidValue, "grid_values given without grid_param");
  if (cfg.command == Command::Sweep && cfg.sweep_param.empty())
    throw Error(ErrorCode::InvalidValue, "command 'sweep' needs sweep_param and sweep_values (or a preset)");

  std::string problems;
  for (const auto& pt : expand_sweep(cfg)) {
    const auto report = validate(pt.params);
    if (report.ok()) continue;
    std::string where;
    for (const auto& [k, v] : pt.labels) where += (where.empty() ? "" : ", ") + k + " = " + v;
    problems += (problems.empty() ? "" : "; ") + (where.empty() ? std::string() : "[" + where + "] ") + report.summary();
  }
  if (!problems.empty()) throw Error(ErrorCode::InvalidParams, problems);
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": missing key");
    try {
      apply_setting(cfg, key, value);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace cellaoi::cli
