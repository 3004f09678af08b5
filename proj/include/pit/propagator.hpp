#pragma once

#include <memory>

#include "pit/pde.hpp"

namespace pit {

/// Uniform split of [0, T] into N slabs, breakpoints T_n = n * T / N.
class TimeSlabPartition {
public:
    TimeSlabPartition(double total_time, int slab_count);

    double total_time() const { return total_time_; }
    int slab_count() const { return slab_count_; }
    double slab_length() const { return total_time_ / slab_count_; }
    double breakpoint(int n) const;

    bool operator==(const TimeSlabPartition& other) const = default;

private:
    double total_time_;
    int slab_count_;
};

enum class PropagatorRole { Fine, Coarse };

/// Affine slab-evolution map built from backward Euler steps. The linear
/// (homogeneous) part and the source part are exposed separately; the full
/// map is their sum.
class Propagator {
public:
    Propagator(SpatialOperator op, TimeSlabPartition partition, int steps_per_slab,
               PropagatorRole role, SourceFn source = {});

    /// Solution at T_{slab_index+1} of the slab problem with initial value
    /// lambda at T_{slab_index}, source included.
    ScalarField propagate(const ScalarField& lambda, int slab_index) const;

    /// Same map with the source dropped; this is the linear part.
    ScalarField propagate_homogeneous(const ScalarField& lambda, int slab_index) const;

    /// propagate of the zero field: the affine offset of the slab map.
    ScalarField source_contribution(int slab_index) const;

    const SpatialOperator& op() const { return *op_; }
    const TimeSlabPartition& partition() const { return partition_; }
    int steps_per_slab() const { return steps_per_slab_; }
    double internal_dt() const { return partition_.slab_length() / steps_per_slab_; }
    PropagatorRole role() const { return role_; }
    bool has_source() const { return static_cast<bool>(source_); }
    const GridPtr& grid_ptr() const { return op_->grid_ptr(); }

private:
    ScalarField run(const ScalarField& lambda, int slab_index, bool with_source) const;
    ScalarField sample_source(double t) const;

    std::shared_ptr<const SpatialOperator> op_;
    TimeSlabPartition partition_;
    int steps_per_slab_;
    PropagatorRole role_;
    SourceFn source_;
    std::shared_ptr<const ImplicitStepSolver> stepper_;  // cached across steps and slabs
};

/// Fine propagator: steps_per_slab chosen so the internal step matches
/// dt_target (slab length must be an integer multiple, up to rounding).
Propagator make_fine_propagator(const SpatialOperator& op, const TimeSlabPartition& partition,
                                double dt_target, SourceFn source = {});

/// Coarse propagator: a single backward Euler step per slab.
Propagator make_coarse_propagator(const SpatialOperator& op, const TimeSlabPartition& partition,
                                  SourceFn source = {});

}  // namespace pit
