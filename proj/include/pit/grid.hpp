#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace pit {

/// Uniform tensor grid on [lo, hi]^d, d = 1 or 2. Unknowns live at interior
/// nodes only; boundary nodes carry the homogeneous Dirichlet value 0.
class SpatialGrid {
public:
    SpatialGrid(int dimension, double lo, double hi, int points_per_axis);

    static std::shared_ptr<const SpatialGrid> make(int dimension, double lo, double hi,
                                                   int points_per_axis);
    /// Default domain [-0.5, 0.5]^d.
    static std::shared_ptr<const SpatialGrid> make_unit(int dimension, int points_per_axis);

    int dimension() const { return dimension_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    int points_per_axis() const { return points_per_axis_; }
    int interior_per_axis() const { return points_per_axis_ - 2; }
    double spacing() const { return spacing_; }

    std::size_t interior_count() const;

    /// Physical coordinate of interior index k along one axis (k = 0 is the
    /// first node inside the boundary).
    double interior_coord(int k) const { return lo_ + (k + 1) * spacing_; }

    /// Flat index of interior node (i) in 1D or (i, j) in 2D, x-fastest.
    std::size_t flat_index(int i, int j = 0) const;

    bool operator==(const SpatialGrid& other) const;

private:
    int dimension_;
    double lo_;
    double hi_;
    int points_per_axis_;
    double spacing_;
};

using GridPtr = std::shared_ptr<const SpatialGrid>;

/// One real value per interior grid node.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(GridPtr grid, double fill = 0.0);
    ScalarField(GridPtr grid, std::vector<double> values);

    const SpatialGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    bool empty() const { return grid_ == nullptr; }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double a);
    /// this += a * x
    ScalarField& axpy(double a, const ScalarField& x);

    bool all_finite() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double a, ScalarField x);

/// Discrete L2 pairing h^d * sum_i a_i b_i. Grids must match.
double inner_product(const ScalarField& a, const ScalarField& b);

/// sqrt(inner_product(a, a))
double l2_norm(const ScalarField& a);

/// exp(-|x - center|^2 / (2 sigma^2)) sampled at interior nodes.
ScalarField gaussian_initial_condition(const GridPtr& grid, std::array<double, 2> center,
                                       double sigma);

/// Throws std::invalid_argument unless a and b live on the same grid.
void require_same_grid(const ScalarField& a, const ScalarField& b);

}  // namespace pit
