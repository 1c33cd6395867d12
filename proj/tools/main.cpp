// cellaoi: analytic and simulated age-of-information / D2D metrics as CSV.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cellaoi/cli/config.hpp"
#include "cellaoi/cli/experiment.hpp"
#include "cellaoi/error.hpp"

namespace cli = cellaoi::cli;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cellaoi::Error(cellaoi::ErrorCode::ParseError, "cannot open config file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age of information and D2D throughput in joint-mode cellular IoT networks"};

  std::string command;
  std::string config_path;
  std::string preset;
  std::vector<std::string> overrides;
  std::string output;
  bool paper_scale = false;
  bool list_presets = false;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  app.add_option("command", command, "analytic | simulate | compare | sweep | fit-area (overrides the config)");
  app.add_option("-c,--config", config_path, "config file with key = value lines")->check(CLI::ExistingFile);
  app.add_option("-p,--preset", preset, "named figure preset");
  app.add_option("-s,--set", overrides, "extra key=value setting, applied after the config")->allow_extra_args(false);
  app.add_option("-o,--output", output, "CSV destination (default: output_path or stdout)");
  app.add_flag("--paper-scale", paper_scale, "10000 realizations x 1000 slots");
  auto* seed_opt = app.add_option("--seed", seed, "master seed");
  auto* threads_opt = app.add_option("-j,--threads", threads, "worker threads (0: all cores)");
  app.add_flag("--list-presets", list_presets, "print preset names and exit");

  CLI11_PARSE(app, argc, argv);

  if (list_presets) {
    for (const auto& p : cli::preset_names()) std::cout << p << '\n';
    return cli::kExitOk;
  }

  cli::ExperimentConfig cfg;
  try {
    // Compose one config text so that every setting, including command-line
    // ones, goes through the same line-numbered parser and validation.
    std::ostringstream text;
    if (!preset.empty()) text << "preset = " << preset << '\n';
    if (!config_path.empty()) text << read_file(config_path) << '\n';
    if (!command.empty()) text << "command = " << command << '\n';
    if (paper_scale) text << "n_realizations = 10000\nn_slots = 1000\n";
    for (const auto& kv : overrides) {
      if (kv.find('=') == std::string::npos)
        throw cellaoi::Error(cellaoi::ErrorCode::ParseError, "--set expects key=value, got '" + kv + "'");
      text << kv << '\n';
    }
    if (seed_opt->count() > 0) text << "master_seed = " << seed << '\n';
    if (threads_opt->count() > 0) text << "threads = " << threads << '\n';
    cfg = cli::parse_config(text.str());
  } catch (const cellaoi::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  }

  if (output.empty()) output = cfg.output_path;
  if (output.empty() || output == "-") return cli::run(cfg, std::cout, std::cerr);

  std::ofstream out(output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << output << "'\n";
    return cli::kExitUsage;
  }
  return cli::run(cfg, out, std::cout);
}
