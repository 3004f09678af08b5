#include "pit/block_system.hpp"

#include <chrono>
#include <stdexcept>
#include <utility>

namespace pit {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

BlockVector::BlockVector(GridPtr grid, int block_count) {
    if (!grid) throw std::invalid_argument("BlockVector: null grid");
    if (block_count < 1) throw std::invalid_argument("BlockVector: block_count must be >= 1");
    blocks_.reserve(static_cast<std::size_t>(block_count));
    for (int n = 0; n < block_count; ++n) blocks_.emplace_back(grid);
}

BlockVector::BlockVector(std::vector<ScalarField> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw std::invalid_argument("BlockVector: no blocks");
    for (const auto& b : blocks_) require_same_grid(blocks_.front(), b);
}

BlockVector& BlockVector::operator+=(const BlockVector& other) {
    require_same_shape(*this, other);
    for (std::size_t n = 0; n < blocks_.size(); ++n) blocks_[n] += other.blocks_[n];
    return *this;
}

BlockVector& BlockVector::operator-=(const BlockVector& other) {
    require_same_shape(*this, other);
    for (std::size_t n = 0; n < blocks_.size(); ++n) blocks_[n] -= other.blocks_[n];
    return *this;
}

BlockVector& BlockVector::operator*=(double scale) {
    for (auto& b : blocks_) b *= scale;
    return *this;
}

BlockVector& BlockVector::axpy(double a, const BlockVector& x) {
    require_same_shape(*this, x);
    for (std::size_t n = 0; n < blocks_.size(); ++n) blocks_[n].axpy(a, x.blocks_[n]);
    return *this;
}

bool BlockVector::all_finite() const {
    for (const auto& b : blocks_) {
        if (!b.all_finite()) return false;
    }
    return true;
}

BlockVector operator+(BlockVector a, const BlockVector& b) {
    a += b;
    return a;
}

BlockVector operator-(BlockVector a, const BlockVector& b) {
    a -= b;
    return a;
}

BlockVector operator*(double scale, BlockVector v) {
    v *= scale;
    return v;
}

double block_inner_product(const BlockVector& a, const BlockVector& b) {
    require_same_shape(a, b);
    double sum = 0.0;
    for (int n = 0; n < a.block_count(); ++n) sum += inner_product(a[n], b[n]);
    return sum;
}

double block_norm_n_inf(const BlockVector& v) {
    double worst = 0.0;
    for (int n = 0; n < v.block_count(); ++n) worst = std::max(worst, l2_norm(v[n]));
    return worst;
}

void require_same_shape(const BlockVector& a, const BlockVector& b) {
    if (a.block_count() != b.block_count()) {
        throw std::invalid_argument("block vectors have different block counts");
    }
    require_same_grid(a[0], b[0]);
}

BlockOperatorContext::BlockOperatorContext(Propagator fine, Propagator coarse,
                                           ScalarField initial_value)
    : fine_(std::move(fine)), coarse_(std::move(coarse)), initial_value_(std::move(initial_value)) {
    if (fine_.role() != PropagatorRole::Fine || coarse_.role() != PropagatorRole::Coarse) {
        throw std::invalid_argument("BlockOperatorContext: propagator roles are swapped");
    }
    if (!(fine_.partition() == coarse_.partition())) {
        throw std::invalid_argument("BlockOperatorContext: propagators disagree on the partition");
    }
    if (!(*fine_.grid_ptr() == *coarse_.grid_ptr()) ||
        !(*fine_.grid_ptr() == *initial_value_.grid_ptr())) {
        throw std::invalid_argument("BlockOperatorContext: spatial grids do not match");
    }
    if (coarse_.has_source() != fine_.has_source()) {
        throw std::invalid_argument(
            "BlockOperatorContext: fine and coarse propagators disagree on the source term");
    }
}

BlockVector apply_F(const BlockOperatorContext& ctx, const BlockVector& L, SlabExecutor& exec,
                    RunStats* stats) {
    if (L.block_count() != ctx.block_count()) {
        throw std::invalid_argument("apply_F: block count does not match the partition");
    }
    require_same_grid(L[0], ctx.initial_value());
    const int count = ctx.block_count();

    std::vector<SlabExecutor::Task> tasks;
    tasks.reserve(static_cast<std::size_t>(count - 1));
    const Propagator& fine = ctx.fine();
    for (int n = 1; n < count; ++n) {
        // Task index n-1 propagates block n-1 across slab n-1.
        tasks.push_back([&fine, &L, n] { return fine.propagate_homogeneous(L[n - 1], n - 1); });
    }

    SlabExecutor::BatchStats batch;
    std::vector<ScalarField> propagated = exec.parallel_map_slabs(tasks, &batch);

    BlockVector out = ctx.zero_vector();
    out[0] = L[0];
    for (int n = 1; n < count; ++n) {
        out[n] = L[n];
        out[n] -= propagated[static_cast<std::size_t>(n - 1)];
    }

    if (stats) {
        stats->fine_applications += count - 1;
        stats->fine_parallel_ms += batch.wall_ms;
        stats->fine_busy_ms += batch.busy_ms;
    }
    return out;
}

BlockVector assemble_rhs(const BlockOperatorContext& ctx, SlabExecutor& exec, RunStats* stats) {
    const int count = ctx.block_count();
    BlockVector rhs = ctx.zero_vector();
    rhs[0] = ctx.initial_value();
    if (!ctx.fine().has_source()) return rhs;

    std::vector<SlabExecutor::Task> tasks;
    tasks.reserve(static_cast<std::size_t>(count - 1));
    const Propagator& fine = ctx.fine();
    for (int n = 1; n < count; ++n) {
        tasks.push_back([&fine, n] { return fine.source_contribution(n - 1); });
    }

    SlabExecutor::BatchStats batch;
    std::vector<ScalarField> contributions = exec.parallel_map_slabs(tasks, &batch);
    for (int n = 1; n < count; ++n) rhs[n] = std::move(contributions[static_cast<std::size_t>(n - 1)]);

    if (stats) {
        stats->fine_applications += count - 1;
        stats->fine_parallel_ms += batch.wall_ms;
        stats->fine_busy_ms += batch.busy_ms;
    }
    return rhs;
}

BlockVector apply_G_inverse(const BlockOperatorContext& ctx, const BlockVector& V,
                            RunStats* stats) {
    if (V.block_count() != ctx.block_count()) {
        throw std::invalid_argument("apply_G_inverse: block count does not match the partition");
    }
    require_same_grid(V[0], ctx.initial_value());
    const int count = ctx.block_count();
    const Propagator& coarse = ctx.coarse();

    const auto t0 = Clock::now();
    BlockVector out = ctx.zero_vector();
    out[0] = V[0];
    for (int n = 1; n < count; ++n) {
        out[n] = coarse.propagate_homogeneous(out[n - 1], n - 1);
        out[n] += V[n];
    }
    if (stats) {
        stats->coarse_applications += count - 1;
        stats->coarse_sequential_ms += ms_since(t0);
    }
    return out;
}

}  // namespace pit
