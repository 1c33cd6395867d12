#pragma once

#include <ostream>

#include "cellaoi/cli/config.hpp"

namespace cellaoi::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNumerical = 2,
  kExitCompareFailed = 3,
};

/// Runs the configured command over every sweep point, writing one CSV row per
/// point to `csv` and a short human-readable report to `summary`. A failure
/// after the header leaves the rows written so far followed by an error row.
int run(const ExperimentConfig& config, std::ostream& csv, std::ostream& summary);

/// Exit code for an error raised while running.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace cellaoi::cli
