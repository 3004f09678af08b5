#include "pit/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace pit {

TimeSlabPartition::TimeSlabPartition(double total_time, int slab_count)
    : total_time_(total_time), slab_count_(slab_count) {
    if (!(total_time > 0.0)) throw std::invalid_argument("TimeSlabPartition: T must be positive");
    if (slab_count < 2) throw std::invalid_argument("TimeSlabPartition: need at least 2 slabs");
}

double TimeSlabPartition::breakpoint(int n) const {
    if (n < 0 || n > slab_count_) throw std::invalid_argument("TimeSlabPartition: bad breakpoint");
    return n * (total_time_ / slab_count_);
}

Propagator::Propagator(SpatialOperator op, TimeSlabPartition partition, int steps_per_slab,
                       PropagatorRole role, SourceFn source)
    : op_(std::make_shared<const SpatialOperator>(std::move(op))),
      partition_(partition),
      steps_per_slab_(steps_per_slab),
      role_(role),
      source_(std::move(source)) {
    if (steps_per_slab < 1) throw std::invalid_argument("Propagator: steps_per_slab must be >= 1");
    stepper_ = std::make_shared<const ImplicitStepSolver>(*op_, internal_dt());
}

ScalarField Propagator::sample_source(double t) const {
    const GridPtr& grid = op_->grid_ptr();
    ScalarField out(grid);
    const int m = grid->interior_per_axis();
    if (grid->dimension() == 1) {
        for (int i = 0; i < m; ++i) {
            const double x[1] = {grid->interior_coord(i)};
            out[grid->flat_index(i)] = source_(t, x);
        }
    } else {
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < m; ++i) {
                const double x[2] = {grid->interior_coord(i), grid->interior_coord(j)};
                out[grid->flat_index(i, j)] = source_(t, x);
            }
        }
    }
    return out;
}

ScalarField Propagator::run(const ScalarField& lambda, int slab_index, bool with_source) const {
    if (slab_index < 0 || slab_index >= partition_.slab_count()) {
        throw std::invalid_argument("Propagator: slab_index out of range");
    }
    if (!(lambda.grid() == op_->grid())) {
        throw std::invalid_argument("Propagator: field grid does not match operator grid");
    }
    const double t0 = partition_.breakpoint(slab_index);
    const double dt = internal_dt();
    ScalarField y = lambda;
    for (int step = 1; step <= steps_per_slab_; ++step) {
        if (with_source && source_) {
            // backward Euler: source sampled at the end of the step
            ScalarField rhs = y;
            rhs.axpy(dt, sample_source(t0 + step * dt));
            y = stepper_->solve(rhs);
        } else {
            y = stepper_->solve(y);
        }
    }
    return y;
}

ScalarField Propagator::propagate(const ScalarField& lambda, int slab_index) const {
    return run(lambda, slab_index, true);
}

ScalarField Propagator::propagate_homogeneous(const ScalarField& lambda, int slab_index) const {
    return run(lambda, slab_index, false);
}

ScalarField Propagator::source_contribution(int slab_index) const {
    if (slab_index < 0 || slab_index >= partition_.slab_count()) {
        throw std::invalid_argument("Propagator: slab_index out of range");
    }
    if (!source_) return ScalarField(op_->grid_ptr());  // f == 0: exactly zero
    return propagate(ScalarField(op_->grid_ptr()), slab_index);
}

Propagator make_fine_propagator(const SpatialOperator& op, const TimeSlabPartition& partition,
                                double dt_target, SourceFn source) {
    if (!(dt_target > 0.0)) throw std::invalid_argument("make_fine_propagator: dt must be positive");
    const double ratio = partition.slab_length() / dt_target;
    const int steps = std::max(1, static_cast<int>(std::lround(ratio)));
    if (std::abs(ratio - steps) > 1e-9 * steps) {
        throw std::invalid_argument("make_fine_propagator: slab length is not a multiple of dt");
    }
    return {op, partition, steps, PropagatorRole::Fine, std::move(source)};
}

Propagator make_coarse_propagator(const SpatialOperator& op, const TimeSlabPartition& partition,
                                  SourceFn source) {
    return {op, partition, 1, PropagatorRole::Coarse, std::move(source)};
}

}  // namespace pit
