#include "pit/cli.hpp"

#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "pit/config.hpp"
#include "pit/dense_oracle.hpp"
#include "pit/errors.hpp"
#include "pit/runner.hpp"

namespace pit {

namespace {

struct RunArgs {
    std::string case_name = "diffusion";
    std::string solver = "both";
    std::string slabs;
    std::string scale = "desk";
    std::string out_dir = "out";
    std::string config_path;
};

struct VerifyArgs {
    std::string case_name = "diffusion";
    int dimension = 2;
    int grid_points = 5;
    int slab_count = 3;
    int trials = 20;
    double tolerance = 1e-10;
    bool inject_fault = false;
};

int do_run(const RunArgs& args, std::ostream& out) {
    ExperimentPreset preset =
        make_preset(parse_case_name(args.case_name), parse_scale(args.scale));
    if (!args.slabs.empty()) preset.slab_counts = parse_slab_list(args.slabs);

    SolverConfig solver_config;
    std::optional<int> workers;
    if (!args.config_path.empty()) {
        const ConfigOverrides overrides = parse_config_file(args.config_path);
        apply_overrides(overrides, preset, solver_config, workers);
    }

    RunSpec spec;
    spec.preset = preset;
    spec.solver = parse_solver_choice(args.solver);
    spec.solver_config = solver_config;
    spec.workers = workers;
    spec.out_dir = args.out_dir;

    const std::string path = run_experiment(spec, out);
    out << "wrote " << path << "\n";
    return 0;
}

int do_verify(const VerifyArgs& args, std::ostream& out) {
    const ExperimentPreset preset = make_preset(parse_case_name(args.case_name), Scale::Desk);
    if (args.dimension == 1 && preset.velocity == VelocityField::Rotation) {
        throw ConfigError("the rotation velocity field needs a 2D grid; pick another case");
    }

    const GridPtr grid = SpatialGrid::make_unit(args.dimension, args.grid_points);
    PDECoefficients coeffs;
    coeffs.velocity = preset.velocity;
    coeffs.diffusion = preset.mu;
    coeffs.reaction = preset.r;
    const SpatialOperator op = assemble_spatial_operator(coeffs, grid);

    // A short horizon keeps the probe propagations cheap; the checks compare
    // operators, so the specific dynamics are immaterial.
    const TimeSlabPartition partition(0.1, args.slab_count);
    Propagator fine = make_fine_propagator(op, partition, partition.slab_length() / 8);
    Propagator coarse = make_coarse_propagator(op, partition);
    ScalarField y0 = gaussian_initial_condition(grid, {0.0, 0.0}, preset.gaussian_sigma);
    const BlockOperatorContext ctx(std::move(fine), std::move(coarse), std::move(y0));

    SlabExecutor exec;
    const OracleCheckReport report =
        run_oracle_checks(ctx, exec, args.trials, args.tolerance, args.inject_fault);

    out << "oracle checks on " << to_string(preset.case_name) << ", " << args.dimension << "D, "
        << args.grid_points << " points/axis, N=" << args.slab_count << ", " << args.trials
        << " trials, tolerance " << args.tolerance << "\n";
    for (const OracleCheck& check : report.checks) {
        char line[160];
        std::snprintf(line, sizeof line, "  [%s] %-40s worst relative error %.3e\n",
                      check.passed ? "pass" : "FAIL", check.name.c_str(),
                      check.worst_relative_error);
        out << line;
    }
    out << (report.all_passed() ? "all checks passed\n" : "CHECKS FAILED\n");
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"parallel-in-time benchmark: parareal and preconditioned BiCGStab over time slabs"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "run a benchmark case and write per-iteration CSV");
    run->add_option("--case", run_args.case_name,
                    "diffusion | diffusion_reaction | advection_diffusion_reaction")
        ->capture_default_str();
    run->add_option("--solver", run_args.solver, "parareal | pitsbicg | both")
        ->capture_default_str();
    run->add_option("--slabs", run_args.slabs, "comma-separated slab counts (default preset sweep)");
    run->add_option("--scale", run_args.scale, "paper | desk")->capture_default_str();
    run->add_option("--out", run_args.out_dir, "output directory")->capture_default_str();
    run->add_option("--config", run_args.config_path, "key = value file overriding the flags");

    VerifyArgs verify_args;
    CLI::App* verify =
        app.add_subcommand("verify", "cross-check the matrix-free operators against a dense oracle");
    verify->add_option("--case", verify_args.case_name, "coefficient preset to probe")
        ->capture_default_str();
    verify->add_option("--dim", verify_args.dimension, "spatial dimension (1 or 2)")
        ->capture_default_str();
    verify->add_option("--grid-points", verify_args.grid_points, "points per axis")
        ->capture_default_str();
    verify->add_option("--slabs", verify_args.slab_count, "slab count")->capture_default_str();
    verify->add_option("--trials", verify_args.trials, "random probe vectors")
        ->capture_default_str();
    verify->add_option("--tolerance", verify_args.tolerance, "pass threshold")
        ->capture_default_str();
    verify->add_flag("--inject-fault", verify_args.inject_fault)->group("");  // negative control

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return do_run(run_args, out);
        if (verify->parsed()) return do_verify(verify_args, out);
        err << "error: no subcommand selected\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pit
