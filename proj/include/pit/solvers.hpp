#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pit/block_system.hpp"
#include "pit/executor.hpp"

namespace pit {

enum class SolveStatus { Converged, MaxIterations };

const char* to_string(SolveStatus status);

enum class InitialGuessPolicy { CoarseSweep, Zero };

/// One row of a solver's convergence history. Counters are cumulative and
/// follow each solver's own attribution convention (see the solver docs).
struct IterationRecord {
    int k = 0;
    double residual_norm = 0.0;
    long fine_applications = 0;
    long coarse_applications = 0;
    std::optional<double> error_vs_reference;
    double wall_ms = 0.0;  // elapsed since the solve started
};

struct ConvergenceHistory {
    std::vector<IterationRecord> records;
    SolveStatus status = SolveStatus::MaxIterations;
    int restarts = 0;
    RunStats stats;
};

struct SolverConfig {
    double tolerance = 1e-8;           // stop when the preconditioned residual norm drops below
    double restart_tolerance = 1e-12;  // shadow-residual orthogonality floor triggering a restart
    int max_iterations = 200;
    InitialGuessPolicy initial_guess = InitialGuessPolicy::CoarseSweep;

    /// Requires tolerance > restart_tolerance > 0 and max_iterations >= 1.
    void validate() const;
};

struct SolveOptions {
    /// Start from this iterate instead of the configured policy.
    const BlockVector* initial_guess_override = nullptr;
    /// When set, every record carries the N-inf distance of the iterate to it.
    const BlockVector* reference = nullptr;
    /// When set, receives a copy of the first preconditioned residual.
    BlockVector* first_residual_out = nullptr;
    /// Called after each recorded row with the iterate the row describes.
    std::function<void(const IterationRecord&, const BlockVector&)> iterate_observer;
};

struct SolveResult {
    BlockVector solution;
    ConvergenceHistory history;
};

/// Sequential fine trajectory sampled at the breakpoints: the exact solution
/// of the continuity system. Not charged to any solver counter.
BlockVector sequential_fine_solve(const BlockOperatorContext& ctx);

/// Build the starting iterate. CoarseSweep runs the coarse propagator
/// sequentially from the initial value (charged as coarse applications);
/// Zero returns the zero block vector.
BlockVector initial_guess(const BlockOperatorContext& ctx, InitialGuessPolicy policy,
                          RunStats* stats = nullptr);

/// G^{-1}(B - F L): the preconditioned residual both solvers are driven by.
/// Shared so the two solvers produce bitwise-identical first residuals.
BlockVector preconditioned_residual(const BlockOperatorContext& ctx, const BlockVector& lambda,
                                    const BlockVector& rhs, SlabExecutor& exec, RunStats* stats);

/// Fixed-point iteration L <- L + G^{-1}(B - F L). Row k snapshots the
/// counters before its correction is computed, so recorded fine applications
/// equal k(N-1): the correction doubles as the next update, and the row
/// reports the cost of reaching the iterate it describes.
SolveResult parareal_solve(const BlockOperatorContext& ctx, const SolverConfig& config,
                           SlabExecutor& exec, const SolveOptions& options = {});

/// Stabilized biconjugate gradients on the left-preconditioned system
/// G^{-1} F L = G^{-1} B. Each full iteration applies F (and the coarse
/// sweep) twice, so row k records (2k+1)(N-1) fine applications; the final
/// row is 2k(N-1) when the half-step exit fires. Near-orthogonality of the
/// running and shadow residuals triggers a restart (counted in history).
SolveResult pitsbicg_solve(const BlockOperatorContext& ctx, const SolverConfig& config,
                           SlabExecutor& exec, const SolveOptions& options = {});

}  // namespace pit
