#include "pit/solvers.hpp"

#include <chrono>
#include <cmath>
#include <utility>

#include "pit/errors.hpp"

namespace pit {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Denominators below this magnitude mean the recurrence has degenerated;
// dividing would produce garbage, so the solver restarts instead.
constexpr double kBreakdownFloor = 1e-300;

}  // namespace

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIterations: return "max-iterations";
    }
    return "unknown";
}

void SolverConfig::validate() const {
    if (!(tolerance > restart_tolerance) || !(restart_tolerance > 0.0)) {
        throw ConfigError("solver tolerances must satisfy tolerance > restart_tolerance > 0");
    }
    if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
}

BlockVector sequential_fine_solve(const BlockOperatorContext& ctx) {
    BlockVector out = ctx.zero_vector();
    out[0] = ctx.initial_value();
    for (int n = 1; n < ctx.block_count(); ++n) {
        out[n] = ctx.fine().propagate(out[n - 1], n - 1);
    }
    return out;
}

BlockVector initial_guess(const BlockOperatorContext& ctx, InitialGuessPolicy policy,
                          RunStats* stats) {
    BlockVector out = ctx.zero_vector();
    if (policy == InitialGuessPolicy::Zero) return out;

    const auto t0 = Clock::now();
    out[0] = ctx.initial_value();
    for (int n = 1; n < ctx.block_count(); ++n) {
        out[n] = ctx.coarse().propagate(out[n - 1], n - 1);
    }
    if (stats) {
        stats->coarse_applications += ctx.block_count() - 1;
        stats->coarse_sequential_ms += ms_since(t0);
    }
    return out;
}

BlockVector preconditioned_residual(const BlockOperatorContext& ctx, const BlockVector& lambda,
                                    const BlockVector& rhs, SlabExecutor& exec, RunStats* stats) {
    BlockVector r = rhs;
    r -= apply_F(ctx, lambda, exec, stats);
    return apply_G_inverse(ctx, r, stats);
}

SolveResult parareal_solve(const BlockOperatorContext& ctx, const SolverConfig& config,
                           SlabExecutor& exec, const SolveOptions& options) {
    config.validate();
    const auto t0 = Clock::now();

    ConvergenceHistory hist;
    BlockVector lambda = options.initial_guess_override
                             ? *options.initial_guess_override
                             : initial_guess(ctx, config.initial_guess, &hist.stats);
    const BlockVector rhs = assemble_rhs(ctx, exec, &hist.stats);

    for (int k = 0;; ++k) {
        // The correction is both this row's residual and the next update, so
        // the row charges only the work spent reaching the current iterate.
        const long fine_before = hist.stats.fine_applications;
        const long coarse_before = hist.stats.coarse_applications;
        const BlockVector correction =
            preconditioned_residual(ctx, lambda, rhs, exec, &hist.stats);
        if (k == 0 && options.first_residual_out) *options.first_residual_out = correction;

        IterationRecord rec;
        rec.k = k;
        rec.residual_norm = block_norm_n_inf(correction);
        rec.fine_applications = fine_before;
        rec.coarse_applications = coarse_before;
        if (options.reference) rec.error_vs_reference = block_norm_n_inf(lambda - *options.reference);
        rec.wall_ms = ms_since(t0);
        hist.records.push_back(rec);
        if (options.iterate_observer) options.iterate_observer(rec, lambda);

        if (rec.residual_norm <= config.tolerance) {
            hist.status = SolveStatus::Converged;
            break;
        }
        if (k == config.max_iterations) {
            hist.status = SolveStatus::MaxIterations;
            break;
        }
        lambda += correction;
    }
    return {std::move(lambda), std::move(hist)};
}

SolveResult pitsbicg_solve(const BlockOperatorContext& ctx, const SolverConfig& config,
                           SlabExecutor& exec, const SolveOptions& options) {
    config.validate();
    const auto t0 = Clock::now();

    ConvergenceHistory hist;
    BlockVector lambda = options.initial_guess_override
                             ? *options.initial_guess_override
                             : initial_guess(ctx, config.initial_guess, &hist.stats);
    const BlockVector rhs = assemble_rhs(ctx, exec, &hist.stats);

    auto record = [&](int k, double residual_norm) {
        IterationRecord rec;
        rec.k = k;
        rec.residual_norm = residual_norm;
        rec.fine_applications = hist.stats.fine_applications;
        rec.coarse_applications = hist.stats.coarse_applications;
        if (options.reference) rec.error_vs_reference = block_norm_n_inf(lambda - *options.reference);
        rec.wall_ms = ms_since(t0);
        hist.records.push_back(rec);
        if (options.iterate_observer) options.iterate_observer(rec, lambda);
    };

    BlockVector r = preconditioned_residual(ctx, lambda, rhs, exec, &hist.stats);
    if (options.first_residual_out) *options.first_residual_out = r;
    double r_norm = block_norm_n_inf(r);
    record(0, r_norm);
    if (r_norm <= config.tolerance) {
        hist.status = SolveStatus::Converged;
        return {std::move(lambda), std::move(hist)};
    }

    BlockVector r_shadow = r;
    BlockVector p = r;

    for (int k = 1; k <= config.max_iterations; ++k) {
        auto breakdown_restart = [&] {
            r_shadow = r;
            p = r;
            ++hist.restarts;
            record(k, r_norm);  // the iterate did not move this round
        };

        const double rho = block_inner_product(r, r_shadow);
        BlockVector d = apply_G_inverse(ctx, apply_F(ctx, p, exec, &hist.stats), &hist.stats);
        const double d_dot_shadow = block_inner_product(d, r_shadow);
        if (std::abs(d_dot_shadow) < kBreakdownFloor) {
            breakdown_restart();
            continue;
        }
        const double alpha = rho / d_dot_shadow;

        BlockVector s = r;
        s.axpy(-alpha, d);
        const double s_norm = block_norm_n_inf(s);
        if (s_norm <= config.tolerance) {
            // Half step already suffices; skip the stabilization leg.
            lambda.axpy(alpha, p);
            r = std::move(s);
            record(k, s_norm);
            hist.status = SolveStatus::Converged;
            return {std::move(lambda), std::move(hist)};
        }

        BlockVector t = apply_G_inverse(ctx, apply_F(ctx, s, exec, &hist.stats), &hist.stats);
        const double t_dot_t = block_inner_product(t, t);
        if (t_dot_t < kBreakdownFloor) {
            breakdown_restart();
            continue;
        }
        const double omega = block_inner_product(t, s) / t_dot_t;
        if (std::abs(omega) < kBreakdownFloor) {
            breakdown_restart();
            continue;
        }

        lambda.axpy(alpha, p);
        lambda.axpy(omega, s);
        s.axpy(-omega, t);  // s is now the new residual
        r = std::move(s);
        r_norm = block_norm_n_inf(r);
        record(k, r_norm);
        if (r_norm <= config.tolerance) {
            hist.status = SolveStatus::Converged;
            return {std::move(lambda), std::move(hist)};
        }

        const double r_dot_shadow = block_inner_product(r, r_shadow);
        if (std::abs(r_dot_shadow) <= config.restart_tolerance) {
            // The new residual is numerically orthogonal to the shadow; the
            // next direction would be meaningless, so restart from here.
            r_shadow = r;
            p = r;
            ++hist.restarts;
        } else {
            const double beta = (alpha / omega) * (r_dot_shadow / rho);
            p.axpy(-omega, d);
            p *= beta;
            p += r;
        }
    }

    hist.status = SolveStatus::MaxIterations;
    return {std::move(lambda), std::move(hist)};
}

}  // namespace pit
