#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pit/presets.hpp"
#include "pit/solvers.hpp"

namespace pit {

/// Values read from a `key = value` config file. Every field is optional;
/// set fields override the corresponding preset/flag values.
struct ConfigOverrides {
    std::optional<CaseName> case_name;
    std::optional<double> mu;
    std::optional<double> r;
    std::optional<VelocityField> velocity;
    std::optional<int> grid_points;
    std::optional<double> total_time;
    std::optional<double> dt_fine;
    std::optional<std::vector<int>> slabs;
    std::optional<double> epsilon;
    std::optional<double> epsilon0;
    std::optional<int> max_iters;
    std::optional<int> workers;
};

/// Parse `key = value` lines. '#' starts a comment, blank lines are skipped,
/// unknown keys and malformed values raise ConfigError with the line number.
ConfigOverrides parse_config_text(const std::string& text);

/// Read and parse a config file; unreadable path raises ConfigError.
ConfigOverrides parse_config_file(const std::string& path);

/// Comma-separated positive integers, e.g. "4,8,16".
std::vector<int> parse_slab_list(const std::string& text);

/// Fold overrides into an already-populated preset and solver config.
/// `workers` is replaced only when the file sets it.
void apply_overrides(const ConfigOverrides& overrides, ExperimentPreset& preset,
                     SolverConfig& solver, std::optional<int>& workers);

}  // namespace pit
