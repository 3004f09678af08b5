#pragma once

#include <vector>

#include "pit/executor.hpp"
#include "pit/grid.hpp"
#include "pit/propagator.hpp"

namespace pit {

/// A vector of slab-boundary fields: one block per breakpoint t_0 .. t_{N-1},
/// where N is the slab count. All blocks live on the same spatial grid.
class BlockVector {
public:
    BlockVector(GridPtr grid, int block_count);
    explicit BlockVector(std::vector<ScalarField> blocks);

    int block_count() const { return static_cast<int>(blocks_.size()); }
    const GridPtr& grid_ptr() const { return blocks_.front().grid_ptr(); }

    ScalarField& operator[](int n) { return blocks_[static_cast<std::size_t>(n)]; }
    const ScalarField& operator[](int n) const { return blocks_[static_cast<std::size_t>(n)]; }

    BlockVector& operator+=(const BlockVector& other);
    BlockVector& operator-=(const BlockVector& other);
    BlockVector& operator*=(double scale);
    /// *this += a * x, block by block.
    BlockVector& axpy(double a, const BlockVector& x);

    bool all_finite() const;

private:
    std::vector<ScalarField> blocks_;
};

BlockVector operator+(BlockVector a, const BlockVector& b);
BlockVector operator-(BlockVector a, const BlockVector& b);
BlockVector operator*(double scale, BlockVector v);

/// Sum over blocks of the grid-weighted field inner products.
double block_inner_product(const BlockVector& a, const BlockVector& b);

/// Max over blocks of the per-block L2 norm.
double block_norm_n_inf(const BlockVector& v);

void require_same_shape(const BlockVector& a, const BlockVector& b);

/// Everything needed to apply the slab continuity operator and its coarse
/// preconditioner: the partition, both propagators, and the initial value.
/// The continuity system reads F(L) = B with
///   F(L)_0 = L_0,   F(L)_n = L_n - FineHom(L_{n-1})   (n = 1..N-1),
///   B_0 = y_0,      B_n    = fine source contribution on slab n-1,
/// so the exact solution of the system is the sequential fine trajectory
/// sampled at the breakpoints.
class BlockOperatorContext {
public:
    BlockOperatorContext(Propagator fine, Propagator coarse, ScalarField initial_value);

    const TimeSlabPartition& partition() const { return fine_.partition(); }
    int block_count() const { return partition().slab_count(); }
    const Propagator& fine() const { return fine_; }
    const Propagator& coarse() const { return coarse_; }
    const ScalarField& initial_value() const { return initial_value_; }
    const GridPtr& grid_ptr() const { return initial_value_.grid_ptr(); }

    BlockVector zero_vector() const { return BlockVector(grid_ptr(), block_count()); }

private:
    Propagator fine_;
    Propagator coarse_;
    ScalarField initial_value_;
};

/// Apply the block lower-bidiagonal operator F. The N-1 fine propagations are
/// independent and run through the executor; stats (when given) accumulate the
/// fine application count and the wall/busy time of the parallel phase.
BlockVector apply_F(const BlockOperatorContext& ctx, const BlockVector& L, SlabExecutor& exec,
                    RunStats* stats = nullptr);

/// Right-hand side of the continuity system. Without a source term every block
/// past the first is zero and no propagation is performed.
BlockVector assemble_rhs(const BlockOperatorContext& ctx, SlabExecutor& exec,
                         RunStats* stats = nullptr);

/// Apply the inverse of the coarse continuity operator by forward
/// substitution: W_0 = V_0, W_n = V_n + CoarseHom(W_{n-1}). Inherently
/// sequential; stats accumulate the coarse application count and wall time.
BlockVector apply_G_inverse(const BlockOperatorContext& ctx, const BlockVector& V,
                            RunStats* stats = nullptr);

}  // namespace pit
