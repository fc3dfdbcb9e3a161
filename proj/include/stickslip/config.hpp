#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "stickslip/scenarios.hpp"

namespace stickslip {

struct OutputPaths {
    std::string trajectory_csv = "trajectory.csv";
    std::string summary = "summary.txt";
    /// Empty disables plot output.
    std::string plots_dir;
};

/// Everything needed to run one simulation, resolved from a config file.
struct RunConfig {
    SystemParams params{1.0, 1.0};
    DashpotLaw law = BinghamLaw{1.0, 1.0};
    Forcing forcing = ZeroForcing{};
    double x0 = 0.0;
    std::optional<double> F_d0;
    std::optional<double> v0;
    double dt = 1e-4;
    double t_end = 2.0;
    std::int64_t max_steps = kDefaultStepBudget;
    std::optional<ScenarioId> scenario;
    OutputPaths output;
};

/// Parses `key = value` lines.  `#` starts a comment, blank lines are
/// skipped, keys must be unique and known.
///
/// `reference_defaults = true` preloads the canonical parameter set
/// (m = 1, k = 100, Bingham gamma = 1, threshold = 1); `scenario = f1 | f2 |
/// small | large` implies it and adds the case's forcing and start point.
/// Explicit keys override either, regardless of order.  Without them, m, k
/// and the law keys are required.  dt defaults to 1e-4 and t_end to 2.
///
/// Overrides behave like extra lines appended to the file, replacing earlier
/// values for the same key.
RunConfig parse_config(const std::string& text);
RunConfig parse_config(const std::string& text,
                       const std::map<std::string, std::string>& overrides);

RunConfig load_config(const std::string& path);
RunConfig load_config(const std::string& path,
                      const std::map<std::string, std::string>& overrides);

/// Builds the initial state and integrates per the config.
Trajectory run_config(const RunConfig& config);

} // namespace stickslip
