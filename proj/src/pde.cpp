#include "pit/pde.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "pit/errors.hpp"

namespace pit {

void PDECoefficients::validate() const {
    if (diffusion < 0.0) {
        throw std::invalid_argument("PDECoefficients: diffusion must be nonnegative");
    }
}

ScalarField SpatialOperator::apply(const ScalarField& y) const {
    if (!(y.grid() == *grid_)) throw std::invalid_argument("SpatialOperator: grid mismatch");
    ScalarField out(grid_);
    matrix_.multiply(y.values(), out.values());
    return out;
}

namespace {

struct RowBuilder {
    CsrMatrix m;

    explicit RowBuilder(int n) {
        m.n = n;
        m.row_ptr.reserve(static_cast<std::size_t>(n) + 1);
        m.row_ptr.push_back(0);
    }

    void entry(int col, double val) {
        m.col.push_back(col);
        m.val.push_back(val);
    }

    void close_row() { m.row_ptr.push_back(static_cast<int>(m.col.size())); }
};

}  // namespace

SpatialOperator assemble_spatial_operator(const PDECoefficients& coeffs, const GridPtr& grid) {
    coeffs.validate();
    if (coeffs.velocity == VelocityField::Rotation && grid->dimension() != 2) {
        throw std::invalid_argument("rotational velocity requires a 2D grid");
    }

    const double h = grid->spacing();
    const double mu_h2 = coeffs.diffusion / (h * h);
    const int m = grid->interior_per_axis();

    if (grid->dimension() == 1) {
        RowBuilder b(m);
        for (int i = 0; i < m; ++i) {
            if (mu_h2 != 0.0 && i > 0) b.entry(i - 1, -mu_h2);
            b.entry(i, 2.0 * mu_h2 + coeffs.reaction);
            if (mu_h2 != 0.0 && i < m - 1) b.entry(i + 1, -mu_h2);
            b.close_row();
        }
        return {std::move(b.m), grid, true};
    }

    // 2D: columns emitted in ascending order (south, west, center, east, north)
    const auto n = static_cast<int>(grid->interior_count());
    RowBuilder b(n);
    for (int j = 0; j < m; ++j) {
        const double y = grid->interior_coord(j);
        for (int i = 0; i < m; ++i) {
            const double x = grid->interior_coord(i);
            double ux = 0.0, uy = 0.0;
            if (coeffs.velocity == VelocityField::Rotation) {
                ux = -y;
                uy = x;
            }
            // upwind advection: inflow neighbor carries -|u|/h, center gains |u|/h
            double center = 4.0 * mu_h2 + coeffs.reaction + (std::abs(ux) + std::abs(uy)) / h;
            double west = -mu_h2, east = -mu_h2, south = -mu_h2, north = -mu_h2;
            if (ux > 0.0) {
                west -= ux / h;
            } else if (ux < 0.0) {
                east += ux / h;
            }
            if (uy > 0.0) {
                south -= uy / h;
            } else if (uy < 0.0) {
                north += uy / h;
            }
            const int row = static_cast<int>(grid->flat_index(i, j));
            if (south != 0.0 && j > 0) b.entry(row - m, south);
            if (west != 0.0 && i > 0) b.entry(row - 1, west);
            b.entry(row, center);
            if (east != 0.0 && i < m - 1) b.entry(row + 1, east);
            if (north != 0.0 && j < m - 1) b.entry(row + m, north);
            b.close_row();
        }
    }
    return {std::move(b.m), grid, coeffs.velocity == VelocityField::Zero};
}

ImplicitStepSolver::ImplicitStepSolver(const SpatialOperator& op, double dt)
    : step_matrix_(op.matrix()), grid_(op.grid_ptr()), symmetric_(op.symmetric()), dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("ImplicitStepSolver: dt must be positive");
    for (double& v : step_matrix_.val) v *= dt;
    for (int i = 0; i < step_matrix_.n; ++i) {
        step_matrix_.val[static_cast<std::size_t>(step_matrix_.diagonal_slot(i))] += 1.0;
    }
}

ScalarField ImplicitStepSolver::solve(const ScalarField& rhs) const {
    if (!(rhs.grid() == *grid_)) throw std::invalid_argument("ImplicitStepSolver: grid mismatch");
    ScalarField out(grid_);
    const int cap = kInnerSolveCapFactor * step_matrix_.n;
    const KrylovResult r =
        symmetric_ ? solve_cg(step_matrix_, rhs.values(), out.values(), kInnerSolveRelTol, cap)
                   : solve_bicgstab(step_matrix_, rhs.values(), out.values(), kInnerSolveRelTol, cap);
    if (!r.converged) {
        throw InnerSolveError("implicit step solve did not converge (relative residual " +
                                  std::to_string(r.relative_residual) + " after " +
                                  std::to_string(r.iterations) + " iterations)",
                              r.relative_residual, r.iterations);
    }
    if (!out.all_finite()) {
        throw InnerSolveError("implicit step produced non-finite values", r.relative_residual,
                              r.iterations);
    }
    return out;
}

ScalarField backward_euler_step(const SpatialOperator& op, const ScalarField& y, double dt,
                                const ScalarField& source_at_t) {
    require_same_grid(y, source_at_t);
    ScalarField rhs = y;
    rhs.axpy(dt, source_at_t);
    return ImplicitStepSolver(op, dt).solve(rhs);
}

ScalarField backward_euler_step(const SpatialOperator& op, const ScalarField& y, double dt) {
    return ImplicitStepSolver(op, dt).solve(y);
}

}  // namespace pit
