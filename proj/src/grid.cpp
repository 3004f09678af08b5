#include "pit/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace pit {

SpatialGrid::SpatialGrid(int dimension, double lo, double hi, int points_per_axis)
    : dimension_(dimension), lo_(lo), hi_(hi), points_per_axis_(points_per_axis) {
    if (dimension != 1 && dimension != 2) {
        throw std::invalid_argument("SpatialGrid: dimension must be 1 or 2");
    }
    if (points_per_axis < 3) {
        throw std::invalid_argument("SpatialGrid: points_per_axis must be >= 3");
    }
    if (!(hi > lo)) {
        throw std::invalid_argument("SpatialGrid: empty extent");
    }
    spacing_ = (hi - lo) / static_cast<double>(points_per_axis - 1);
}

GridPtr SpatialGrid::make(int dimension, double lo, double hi, int points_per_axis) {
    return std::make_shared<const SpatialGrid>(dimension, lo, hi, points_per_axis);
}

GridPtr SpatialGrid::make_unit(int dimension, int points_per_axis) {
    return make(dimension, -0.5, 0.5, points_per_axis);
}

std::size_t SpatialGrid::interior_count() const {
    const auto m = static_cast<std::size_t>(interior_per_axis());
    return dimension_ == 1 ? m : m * m;
}

std::size_t SpatialGrid::flat_index(int i, int j) const {
    const auto m = static_cast<std::size_t>(interior_per_axis());
    return static_cast<std::size_t>(j) * (dimension_ == 2 ? m : 0) + static_cast<std::size_t>(i);
}

bool SpatialGrid::operator==(const SpatialGrid& other) const {
    return dimension_ == other.dimension_ && lo_ == other.lo_ && hi_ == other.hi_ &&
           points_per_axis_ == other.points_per_axis_;
}

ScalarField::ScalarField(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->interior_count(), fill) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->interior_count()) {
        throw std::invalid_argument("ScalarField: value count does not match grid");
    }
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (a.grid_ptr() == b.grid_ptr()) return;
    if (a.empty() || b.empty() || !(a.grid() == b.grid())) {
        throw std::invalid_argument("ScalarField: grid mismatch");
    }
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

ScalarField& ScalarField::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

ScalarField& ScalarField::axpy(double a, const ScalarField& x) {
    require_same_grid(*this, x);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += a * x.values_[i];
    return *this;
}

bool ScalarField::all_finite() const {
    for (double v : values_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

ScalarField operator+(ScalarField a, const ScalarField& b) {
    a += b;
    return a;
}

ScalarField operator-(ScalarField a, const ScalarField& b) {
    a -= b;
    return a;
}

ScalarField operator*(double a, ScalarField x) {
    x *= a;
    return x;
}

double inner_product(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    double sum = 0.0;
    const auto av = a.values();
    const auto bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) sum += av[i] * bv[i];
    double weight = a.grid().spacing();
    if (a.grid().dimension() == 2) weight *= a.grid().spacing();
    return weight * sum;
}

double l2_norm(const ScalarField& a) { return std::sqrt(inner_product(a, a)); }

ScalarField gaussian_initial_condition(const GridPtr& grid, std::array<double, 2> center,
                                       double sigma) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("gaussian_initial_condition: sigma must be positive");
    }
    ScalarField out(grid);
    const double inv = 1.0 / (2.0 * sigma * sigma);
    const int m = grid->interior_per_axis();
    if (grid->dimension() == 1) {
        for (int i = 0; i < m; ++i) {
            const double dx = grid->interior_coord(i) - center[0];
            out[grid->flat_index(i)] = std::exp(-dx * dx * inv);
        }
    } else {
        for (int j = 0; j < m; ++j) {
            const double dy = grid->interior_coord(j) - center[1];
            for (int i = 0; i < m; ++i) {
                const double dx = grid->interior_coord(i) - center[0];
                out[grid->flat_index(i, j)] = std::exp(-(dx * dx + dy * dy) * inv);
            }
        }
    }
    return out;
}

}  // namespace pit
