#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "pit/errors.hpp"
#include "pit/executor.hpp"
#include "pit/propagator.hpp"
#include "pit/solvers.hpp"

using namespace pit;

namespace {

struct EnvGuard {
    explicit EnvGuard(const char* value) {
        if (value) {
            setenv("PIT_WORKERS", value, 1);
        } else {
            unsetenv("PIT_WORKERS");
        }
    }
    ~EnvGuard() { unsetenv("PIT_WORKERS"); }
};

std::vector<SlabExecutor::Task> propagation_tasks(const GridPtr& g, int count) {
    PDECoefficients c;
    c.diffusion = 1.0;
    const SpatialOperator op = assemble_spatial_operator(c, g);
    const TimeSlabPartition part(0.1 * (count + 1), count + 1);  // slab length 0.1
    const Propagator fine = make_fine_propagator(op, part, 0.01);

    std::vector<SlabExecutor::Task> tasks;
    for (int i = 0; i < count; ++i) {
        tasks.push_back([fine, field = pit_test::random_field(g, 100 + i), i] {
            return fine.propagate_homogeneous(field, i);
        });
    }
    return tasks;
}

}  // namespace

TEST_CASE("empty task list returns immediately") {
    EnvGuard env(nullptr);
    SlabExecutor exec(2);
    SlabExecutor::BatchStats stats{1.0, 1.0};
    const auto results = exec.parallel_map_slabs({}, &stats);
    CHECK(results.empty());
    CHECK(stats.wall_ms == 0.0);
    CHECK(stats.busy_ms == 0.0);
}

TEST_CASE("results are in task order and bitwise stable across worker counts") {
    EnvGuard env(nullptr);
    const GridPtr g = SpatialGrid::make_unit(2, 9);
    const auto tasks = propagation_tasks(g, 7);

    SlabExecutor one(1);
    SlabExecutor four(4);
    const auto a = one.parallel_map_slabs(tasks);
    const auto b = four.parallel_map_slabs(tasks);

    REQUIRE(a.size() == 7);
    REQUIRE(b.size() == 7);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(pit_test::max_abs_diff(a[i].values(), b[i].values()) == 0.0);
    }
}

TEST_CASE("repeat runs on the same pool are bitwise identical") {
    EnvGuard env(nullptr);
    const GridPtr g = SpatialGrid::make_unit(2, 7);
    const auto tasks = propagation_tasks(g, 5);
    SlabExecutor exec(3);
    const auto a = exec.parallel_map_slabs(tasks);
    const auto b = exec.parallel_map_slabs(tasks);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(pit_test::max_abs_diff(a[i].values(), b[i].values()) == 0.0);
    }
}

TEST_CASE("task failures surface as SlabError with the lowest failing index") {
    EnvGuard env(nullptr);
    const GridPtr g = SpatialGrid::make_unit(2, 5);
    std::vector<SlabExecutor::Task> tasks;
    for (int i = 0; i < 6; ++i) {
        tasks.push_back([g, i]() -> ScalarField {
            if (i == 2 || i == 5) throw std::runtime_error("boom " + std::to_string(i));
            return ScalarField(g, static_cast<double>(i));
        });
    }

    for (int workers : {1, 4}) {
        CAPTURE(workers);
        SlabExecutor exec(workers);
        try {
            exec.parallel_map_slabs(tasks);
            FAIL("expected SlabError");
        } catch (const SlabError& e) {
            CHECK(e.slab_index == 2);
            CHECK(std::string(e.what()).find("slab 2") != std::string::npos);
            CHECK(std::string(e.what()).find("boom 2") != std::string::npos);
        }
        // the pool survives a failed batch
        const auto again = exec.parallel_map_slabs(propagation_tasks(g, 3));
        CHECK(again.size() == 3);
    }
}

TEST_CASE("each task runs exactly once") {
    EnvGuard env(nullptr);
    const GridPtr g = SpatialGrid::make_unit(2, 5);
    std::atomic<int> executions{0};
    std::vector<SlabExecutor::Task> tasks;
    for (int i = 0; i < 7; ++i) {
        tasks.push_back([g, &executions] {
            executions.fetch_add(1);
            return ScalarField(g, 1.0);
        });
    }
    SlabExecutor exec(4);
    exec.parallel_map_slabs(tasks);
    CHECK(executions.load() == 7);
}

TEST_CASE("worker count resolution") {
    SUBCASE("explicit config") {
        EnvGuard env(nullptr);
        ExecutorConfig config;
        config.worker_count = 3;
        CHECK(SlabExecutor(config).worker_count() == 3);
    }
    SUBCASE("environment beats config") {
        EnvGuard env("5");
        ExecutorConfig config;
        config.worker_count = 1;
        CHECK(SlabExecutor(config).worker_count() == 5);
    }
    SUBCASE("invalid environment values are ignored") {
        ExecutorConfig config;
        config.worker_count = 2;
        {
            EnvGuard env("abc");
            CHECK(SlabExecutor(config).worker_count() == 2);
        }
        {
            EnvGuard env("0");
            CHECK(SlabExecutor(config).worker_count() == 2);
        }
    }
    SUBCASE("the explicit-count constructor ignores the environment") {
        EnvGuard env("5");
        CHECK(SlabExecutor(2).worker_count() == 2);
    }
    SUBCASE("nonpositive counts are rejected") {
        EnvGuard env(nullptr);
        CHECK_THROWS_AS(SlabExecutor(0), std::invalid_argument);
        ExecutorConfig config;
        config.worker_count = -1;
        CHECK_THROWS_AS(SlabExecutor{config}, std::invalid_argument);
    }
}

TEST_CASE("instrumentation can be disabled") {
    EnvGuard env(nullptr);
    const GridPtr g = SpatialGrid::make_unit(2, 7);
    ExecutorConfig config;
    config.worker_count = 2;
    config.instrumentation = false;
    SlabExecutor exec(config);
    SlabExecutor::BatchStats stats{5.0, 5.0};
    exec.parallel_map_slabs(propagation_tasks(g, 4), &stats);
    CHECK(stats.wall_ms == 0.0);
    CHECK(stats.busy_ms == 0.0);
}

TEST_CASE("batch stats are nonnegative and busy time covers all tasks") {
    EnvGuard env(nullptr);
    const GridPtr g = SpatialGrid::make_unit(2, 9);
    SlabExecutor exec(2);
    SlabExecutor::BatchStats stats;
    exec.parallel_map_slabs(propagation_tasks(g, 6), &stats);
    CHECK(stats.wall_ms >= 0.0);
    CHECK(stats.busy_ms >= 0.0);
}

TEST_CASE("timing report") {
    ConvergenceHistory hist;
    SUBCASE("zero work gives a zero report") {
        const TimingReport rep = timing_report(hist, RunStats{}, 4);
        CHECK(rep.fine_parallel_wall_ms == 0.0);
        CHECK(rep.parallel_efficiency == 0.0);
        CHECK(rep.iterations == 0);
    }
    SUBCASE("efficiency is busy over workers times wall") {
        RunStats stats;
        stats.fine_parallel_ms = 2.0;
        stats.fine_busy_ms = 8.0;
        stats.fine_applications = 21;
        hist.records.resize(3);
        const TimingReport rep = timing_report(hist, stats, 4);
        CHECK(rep.parallel_efficiency == doctest::Approx(1.0));
        CHECK(rep.iterations == 3);
        CHECK(rep.fine_applications == 21);
        CHECK(rep.worker_count == 4);
    }
}
