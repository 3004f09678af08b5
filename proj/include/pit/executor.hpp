#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "pit/grid.hpp"

namespace pit {

struct ConvergenceHistory;

struct ExecutorConfig {
    /// Unset: PIT_WORKERS from the environment, else hardware parallelism.
    std::optional<int> worker_count;
    bool instrumentation = true;
};

/// Cumulative operation counts and phase timings for one solver run.
/// Mutated only by the orchestrating thread.
struct RunStats {
    long fine_applications = 0;    // slab-level fine propagations
    long coarse_applications = 0;  // slab-level coarse propagations
    double fine_parallel_ms = 0.0;
    double fine_busy_ms = 0.0;  // summed per-task durations of the fine phase
    double coarse_sequential_ms = 0.0;
};

struct TimingReport {
    double fine_parallel_wall_ms = 0.0;
    double coarse_sequential_wall_ms = 0.0;
    double serial_fine_estimate_ms = 0.0;
    double parallel_efficiency = 0.0;
    int worker_count = 1;
    int iterations = 0;
    long fine_applications = 0;
    long coarse_applications = 0;
};

/// Fixed-size worker pool running batches of independent slab tasks.
/// Results land in disjoint slots in task order, so the output is bitwise
/// independent of the worker count and of scheduling.
class SlabExecutor {
public:
    using Task = std::function<ScalarField()>;

    struct BatchStats {
        double wall_ms = 0.0;
        double busy_ms = 0.0;
    };

    /// Worker count resolved from config / PIT_WORKERS / hardware.
    explicit SlabExecutor(const ExecutorConfig& config = {});
    /// Explicit worker count; the environment is not consulted.
    explicit SlabExecutor(int worker_count);
    ~SlabExecutor();

    SlabExecutor(const SlabExecutor&) = delete;
    SlabExecutor& operator=(const SlabExecutor&) = delete;

    int worker_count() const { return static_cast<int>(workers_.size()); }
    bool instrumentation() const { return instrumentation_; }

    /// Runs all tasks, barrier-waits for completion, and returns results in
    /// task order. The first failing task (lowest index) aborts outstanding
    /// work and is rethrown as SlabError with its index.
    std::vector<ScalarField> parallel_map_slabs(const std::vector<Task>& tasks,
                                                BatchStats* stats = nullptr);

    static int resolve_worker_count(const ExecutorConfig& config);

private:
    void start(int worker_count);
    void worker_loop();

    std::vector<std::thread> workers_;
    bool instrumentation_ = true;

    std::mutex mutex_;
    std::condition_variable work_ready_;
    std::condition_variable batch_done_;
    const std::vector<Task>* tasks_ = nullptr;
    std::vector<ScalarField>* results_ = nullptr;
    std::vector<std::exception_ptr>* errors_ = nullptr;
    std::vector<double>* task_ms_ = nullptr;
    std::size_t next_task_ = 0;
    std::size_t completed_ = 0;
    bool failed_ = false;
    std::uint64_t epoch_ = 0;
    bool shutdown_ = false;
};

TimingReport timing_report(const ConvergenceHistory& history, const RunStats& stats,
                           int worker_count);

}  // namespace pit
