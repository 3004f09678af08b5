#include "pit/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "pit/errors.hpp"

namespace pit {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

int default_worker_count(int slab_count) {
    const unsigned hw = std::thread::hardware_concurrency();
    const int cap = std::max(1, slab_count - 1);
    return std::min(hw == 0 ? 1 : static_cast<int>(hw), cap);
}

void log_result(std::ostream& log, const std::string& case_label, const std::string& solver_label,
                int slab_count, const ConvergenceHistory& hist, int workers) {
    const IterationRecord& last = hist.records.back();
    log << case_label << " N=" << slab_count << ' ' << solver_label << ": "
        << to_string(hist.status) << " at k=" << last.k << ", residual "
        << fmt_short(last.residual_norm);
    if (last.error_vs_reference) log << ", error " << fmt_short(*last.error_vs_reference);
    log << ", fine " << hist.stats.fine_applications << ", coarse "
        << hist.stats.coarse_applications;
    if (hist.restarts > 0) log << ", restarts " << hist.restarts;
    const TimingReport report = timing_report(hist, hist.stats, workers);
    log << ", " << fmt_short(last.wall_ms) << " ms (" << workers << " worker"
        << (workers == 1 ? "" : "s");
    if (report.parallel_efficiency > 0.0) {
        log << ", fine-phase efficiency " << fmt_short(report.parallel_efficiency);
    }
    log << ")\n";
}

}  // namespace

SolverChoice parse_solver_choice(const std::string& text) {
    if (text == "parareal") return SolverChoice::Parareal;
    if (text == "pitsbicg") return SolverChoice::PiTSBiCG;
    if (text == "both") return SolverChoice::Both;
    throw ConfigError("unknown solver '" + text + "' (expected parareal, pitsbicg, or both)");
}

std::string to_string(SolverChoice choice) {
    switch (choice) {
        case SolverChoice::Parareal: return "parareal";
        case SolverChoice::PiTSBiCG: return "pitsbicg";
        case SolverChoice::Both: return "both";
    }
    return "unknown";
}

BlockOperatorContext build_context(const ExperimentPreset& preset, int slab_count) {
    preset.validate();
    const GridPtr grid = SpatialGrid::make_unit(2, preset.grid_points);
    PDECoefficients coeffs;
    coeffs.velocity = preset.velocity;
    coeffs.diffusion = preset.mu;
    coeffs.reaction = preset.r;
    const SpatialOperator op = assemble_spatial_operator(coeffs, grid);

    const TimeSlabPartition partition(preset.total_time, slab_count);
    Propagator fine = make_fine_propagator(op, partition, preset.dt_fine);
    Propagator coarse = make_coarse_propagator(op, partition);
    ScalarField y0 = gaussian_initial_condition(grid, {0.0, 0.0}, preset.gaussian_sigma);
    return BlockOperatorContext(std::move(fine), std::move(coarse), std::move(y0));
}

void write_csv_header(std::ostream& out) {
    out << "case,solver,N,k,residual_N_inf,fine_applications,coarse_applications,"
           "error_vs_reference,wall_ms\n";
}

void append_csv_rows(std::ostream& out, const std::string& case_label,
                     const std::string& solver_label, int slab_count,
                     const ConvergenceHistory& history) {
    for (const IterationRecord& rec : history.records) {
        out << case_label << ',' << solver_label << ',' << slab_count << ',' << rec.k << ','
            << fmt(rec.residual_norm) << ',' << rec.fine_applications << ','
            << rec.coarse_applications << ','
            << (rec.error_vs_reference ? fmt(*rec.error_vs_reference) : "") << ','
            << fmt(rec.wall_ms) << '\n';
    }
}

std::string run_experiment(const RunSpec& spec, std::ostream& log) {
    spec.preset.validate();
    spec.solver_config.validate();
    if (spec.workers && *spec.workers < 1) throw ConfigError("workers must be >= 1");

    std::filesystem::create_directories(spec.out_dir);
    const std::string case_label = to_string(spec.preset.case_name);
    const std::string path = (std::filesystem::path(spec.out_dir) / (case_label + ".csv")).string();
    std::ofstream csv(path);
    if (!csv) throw std::runtime_error("cannot write output file '" + path + "'");
    write_csv_header(csv);

    const bool run_parareal =
        spec.solver == SolverChoice::Parareal || spec.solver == SolverChoice::Both;
    const bool run_pitsbicg =
        spec.solver == SolverChoice::PiTSBiCG || spec.solver == SolverChoice::Both;

    for (const int slab_count : spec.preset.slab_counts) {
        const BlockOperatorContext ctx = build_context(spec.preset, slab_count);
        const BlockVector reference = sequential_fine_solve(ctx);

        ExecutorConfig exec_config;
        exec_config.worker_count = spec.workers ? *spec.workers : default_worker_count(slab_count);
        SlabExecutor exec(exec_config);

        SolveOptions options;
        options.reference = &reference;

        if (run_parareal) {
            const SolveResult result = parareal_solve(ctx, spec.solver_config, exec, options);
            append_csv_rows(csv, case_label, "parareal", slab_count, result.history);
            log_result(log, case_label, "parareal", slab_count, result.history,
                       exec.worker_count());
        }
        if (run_pitsbicg) {
            const SolveResult result = pitsbicg_solve(ctx, spec.solver_config, exec, options);
            append_csv_rows(csv, case_label, "pitsbicg", slab_count, result.history);
            log_result(log, case_label, "pitsbicg", slab_count, result.history,
                       exec.worker_count());
        }
        csv.flush();
        if (!csv) throw std::runtime_error("write failure on '" + path + "'");
    }
    return path;
}

}  // namespace pit
