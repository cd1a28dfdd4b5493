#pragma once

#include <ostream>
#include <string>

#include "barrier/config.hpp"

namespace barrier {

// Process exit codes shared by the subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitTruncated = 2;
inline constexpr int kExitValidationFailed = 3;

/// Trajectory CSV to `csv`; a one-line summary to `log`. Writes an SVG chart
/// when `svg_path` is non-empty.
int run_simulate(const ScenarioConfig& config, std::ostream& csv, std::ostream& log,
                 const std::string& svg_path = {});

/// Grid CSV over the configured window.
int run_scan(const ScenarioConfig& config, std::ostream& csv, std::ostream& log, const std::string& svg_path = {});

/// Sampled assumption checks, the rectified-CBF condition when relevant, the
/// virtual-controller condition when relevant, and the validity scan summary.
int run_validate(const ScenarioConfig& config, std::ostream& report);

/// One metrics row per kind in `config.compare_kinds`, sharing x0, dt and T.
int run_compare(const ScenarioConfig& config, std::ostream& csv, std::ostream& log);

}  // namespace barrier
