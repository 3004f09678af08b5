#pragma once

#include <functional>
#include <span>

#include "pit/grid.hpp"
#include "pit/sparse.hpp"

namespace pit {

/// Source term f(t, x); x has one entry per grid dimension. An empty
/// function means f is identically zero.
using SourceFn = std::function<double(double t, std::span<const double> x)>;

enum class VelocityField {
    Zero,
    Rotation,  // u(x1, x2) = (-x2, x1); 2D grids only
};

struct PDECoefficients {
    VelocityField velocity = VelocityField::Zero;
    double diffusion = 0.0;  // mu >= 0
    double reaction = 0.0;
    SourceFn source;  // empty => f == 0

    bool pure_advection() const { return diffusion == 0.0 && velocity != VelocityField::Zero; }
    void validate() const;
};

/// Discrete operator A such that the semi-discrete system reads
/// dy/dt = -A y + f(t). A realizes -mu*Laplacian + u.grad + r*I with
/// centered second differences, first-order upwind advection, and
/// homogeneous Dirichlet walls.
class SpatialOperator {
public:
    SpatialOperator(CsrMatrix matrix, GridPtr grid, bool symmetric)
        : matrix_(std::move(matrix)), grid_(std::move(grid)), symmetric_(symmetric) {}

    const CsrMatrix& matrix() const { return matrix_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const SpatialGrid& grid() const { return *grid_; }
    bool symmetric() const { return symmetric_; }

    ScalarField apply(const ScalarField& y) const;

private:
    CsrMatrix matrix_;
    GridPtr grid_;
    bool symmetric_;
};

SpatialOperator assemble_spatial_operator(const PDECoefficients& coeffs, const GridPtr& grid);

/// Cached solver for (I + dt*A) x = rhs, the backward Euler step matrix.
/// Reused across all steps and slabs of a propagator.
class ImplicitStepSolver {
public:
    ImplicitStepSolver(const SpatialOperator& op, double dt);

    double dt() const { return dt_; }

    /// Solves to relative residual 1e-12 with a cap of 10n iterations.
    /// Throws InnerSolveError when the cap is hit first.
    ScalarField solve(const ScalarField& rhs) const;

private:
    CsrMatrix step_matrix_;  // I + dt*A
    GridPtr grid_;
    bool symmetric_;
    double dt_;
};

/// One backward Euler step: returns y' with (I + dt*A) y' = y + dt*source_at_t.
ScalarField backward_euler_step(const SpatialOperator& op, const ScalarField& y, double dt,
                                const ScalarField& source_at_t);
ScalarField backward_euler_step(const SpatialOperator& op, const ScalarField& y, double dt);

inline constexpr double kInnerSolveRelTol = 1e-12;
inline constexpr int kInnerSolveCapFactor = 10;

}  // namespace pit
