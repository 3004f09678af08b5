#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "pit/presets.hpp"
#include "pit/solvers.hpp"

namespace pit {

enum class SolverChoice { Parareal, PiTSBiCG, Both };

SolverChoice parse_solver_choice(const std::string& text);
std::string to_string(SolverChoice choice);

struct RunSpec {
    ExperimentPreset preset;
    SolverChoice solver = SolverChoice::Both;
    SolverConfig solver_config;
    /// Explicit worker count. Unset: hardware parallelism capped at N-1.
    std::optional<int> workers;
    std::string out_dir = "out";
};

/// Assemble operator, propagators, and initial condition for one slab count.
BlockOperatorContext build_context(const ExperimentPreset& preset, int slab_count);

void write_csv_header(std::ostream& out);
void append_csv_rows(std::ostream& out, const std::string& case_label,
                     const std::string& solver_label, int slab_count,
                     const ConvergenceHistory& history);

/// Sweep the preset's slab counts with the selected solver(s) and write one
/// long-format CSV per case at <out_dir>/<case>.csv. Progress goes to `log`.
/// Returns the CSV path. Throws pit::Error on solver failure, ConfigError on
/// bad configuration, std::runtime_error on unwritable output.
std::string run_experiment(const RunSpec& spec, std::ostream& log);

}  // namespace pit
