#include "pit/executor.hpp"

#include <chrono>
#include <cstdlib>
#include <string>

#include "pit/errors.hpp"
#include "pit/solvers.hpp"

namespace pit {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

int SlabExecutor::resolve_worker_count(const ExecutorConfig& config) {
    if (const char* env = std::getenv("PIT_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
    }
    if (config.worker_count) {
        if (*config.worker_count < 1) {
            throw std::invalid_argument("ExecutorConfig: worker_count must be >= 1");
        }
        return *config.worker_count;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

SlabExecutor::SlabExecutor(const ExecutorConfig& config) : instrumentation_(config.instrumentation) {
    start(resolve_worker_count(config));
}

SlabExecutor::SlabExecutor(int worker_count) {
    if (worker_count < 1) throw std::invalid_argument("SlabExecutor: worker_count must be >= 1");
    start(worker_count);
}

SlabExecutor::~SlabExecutor() {
    {
        std::lock_guard lock(mutex_);
        shutdown_ = true;
    }
    work_ready_.notify_all();
    for (auto& w : workers_) w.join();
}

void SlabExecutor::start(int worker_count) {
    workers_.reserve(static_cast<std::size_t>(worker_count));
    for (int i = 0; i < worker_count; ++i) {
        workers_.emplace_back([this] { worker_loop(); });
    }
}

void SlabExecutor::worker_loop() {
    std::uint64_t seen_epoch = 0;
    std::unique_lock lock(mutex_);
    for (;;) {
        work_ready_.wait(lock, [&] { return shutdown_ || epoch_ != seen_epoch; });
        if (shutdown_) return;
        seen_epoch = epoch_;
        if (tasks_ == nullptr) continue;  // batch was drained before this worker woke

        // Batch pointers stay valid until every task is accounted for, and
        // this worker still owes at least its own claimed tasks.
        const auto* tasks = tasks_;
        auto* results = results_;
        auto* errors = errors_;
        auto* task_ms = task_ms_;
        const std::size_t count = tasks->size();

        while (next_task_ < count) {
            const std::size_t i = next_task_++;
            const bool skip = failed_;
            lock.unlock();
            if (skip) {
                lock.lock();
            } else {
                const auto t0 = Clock::now();
                try {
                    ScalarField out = (*tasks)[i]();
                    (*task_ms)[i] = ms_since(t0);
                    lock.lock();
                    (*results)[i] = std::move(out);
                } catch (...) {
                    (*task_ms)[i] = ms_since(t0);
                    lock.lock();
                    (*errors)[i] = std::current_exception();
                    failed_ = true;
                }
            }
            if (++completed_ == count) batch_done_.notify_all();
        }
    }
}

std::vector<ScalarField> SlabExecutor::parallel_map_slabs(const std::vector<Task>& tasks,
                                                          BatchStats* stats) {
    std::vector<ScalarField> results(tasks.size());
    if (tasks.empty()) {
        if (stats) *stats = {};
        return results;
    }
    std::vector<std::exception_ptr> errors(tasks.size());
    std::vector<double> task_ms(tasks.size(), 0.0);

    const auto t0 = Clock::now();
    {
        std::unique_lock lock(mutex_);
        tasks_ = &tasks;
        results_ = &results;
        errors_ = &errors;
        task_ms_ = &task_ms;
        next_task_ = 0;
        completed_ = 0;
        failed_ = false;
        ++epoch_;
        work_ready_.notify_all();
        batch_done_.wait(lock, [&] { return completed_ == tasks.size(); });
        tasks_ = nullptr;
        results_ = nullptr;
        errors_ = nullptr;
        task_ms_ = nullptr;
    }

    if (stats && instrumentation_) {
        stats->wall_ms = ms_since(t0);
        stats->busy_ms = 0.0;
        for (double t : task_ms) stats->busy_ms += t;
    } else if (stats) {
        *stats = {};
    }

    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const std::exception& e) {
                throw SlabError(static_cast<int>(i), e.what());
            } catch (...) {
                throw SlabError(static_cast<int>(i), "unknown task failure");
            }
        }
    }
    return results;
}

TimingReport timing_report(const ConvergenceHistory& history, const RunStats& stats,
                           int worker_count) {
    TimingReport report;
    report.fine_parallel_wall_ms = stats.fine_parallel_ms;
    report.coarse_sequential_wall_ms = stats.coarse_sequential_ms;
    report.serial_fine_estimate_ms = stats.fine_busy_ms;
    report.worker_count = worker_count;
    report.iterations = static_cast<int>(history.records.size());
    report.fine_applications = stats.fine_applications;
    report.coarse_applications = stats.coarse_applications;
    if (stats.fine_parallel_ms > 0.0 && worker_count > 0) {
        report.parallel_efficiency =
            stats.fine_busy_ms / (static_cast<double>(worker_count) * stats.fine_parallel_ms);
    }
    return report;
}

}  // namespace pit
