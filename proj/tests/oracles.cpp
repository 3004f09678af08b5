#include "oracles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace pit_test {

using pit::GridPtr;
using pit::PDECoefficients;
using pit::ScalarField;
using pit::VelocityField;

std::vector<double> dense_stencil_matrix(const PDECoefficients& coeffs, const GridPtr& grid) {
    const int nx = grid->interior_per_axis();
    const std::size_t n = grid->interior_count();
    const double h = grid->spacing();
    const double diff = coeffs.diffusion / (h * h);
    std::vector<double> a(n * n, 0.0);
    auto at = [&](std::size_t row, std::size_t col) -> double& { return a[row * n + col]; };

    if (grid->dimension() == 1) {
        if (coeffs.velocity != VelocityField::Zero) {
            throw std::invalid_argument("stencil oracle: 1D supports zero velocity only");
        }
        for (int i = 0; i < nx; ++i) {
            const auto k = static_cast<std::size_t>(i);
            at(k, k) += 2.0 * diff + coeffs.reaction;
            if (i > 0) at(k, k - 1) -= diff;
            if (i + 1 < nx) at(k, k + 1) -= diff;
        }
        return a;
    }

    for (int j = 0; j < nx; ++j) {
        for (int i = 0; i < nx; ++i) {
            const auto k = static_cast<std::size_t>(j) * nx + i;
            const double x = grid->interior_coord(i);
            const double y = grid->interior_coord(j);
            double ux = 0.0;
            double uy = 0.0;
            if (coeffs.velocity == VelocityField::Rotation) {
                ux = -y;
                uy = x;
            }

            at(k, k) += 4.0 * diff + coeffs.reaction;
            if (i > 0) at(k, k - 1) -= diff;
            if (i + 1 < nx) at(k, k + 1) -= diff;
            if (j > 0) at(k, k - nx) -= diff;
            if (j + 1 < nx) at(k, k + nx) -= diff;

            // upwinding: the derivative looks into the flow
            if (ux > 0.0) {
                at(k, k) += ux / h;
                if (i > 0) at(k, k - 1) -= ux / h;
            } else if (ux < 0.0) {
                at(k, k) -= ux / h;
                if (i + 1 < nx) at(k, k + 1) += ux / h;
            }
            if (uy > 0.0) {
                at(k, k) += uy / h;
                if (j > 0) at(k, k - nx) -= uy / h;
            } else if (uy < 0.0) {
                at(k, k) -= uy / h;
                if (j + 1 < nx) at(k, k + nx) += uy / h;
            }
        }
    }
    return a;
}

std::vector<double> gauss_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    if (a.size() != n * n) throw std::invalid_argument("gauss_solve: matrix/vector size mismatch");

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a[r * n + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) throw std::invalid_argument("gauss_solve: singular matrix");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
            std::swap(b[pivot], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r * n + col] / a[col * n + col];
            if (factor == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a[r * n + j] -= factor * a[col * n + j];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
        double sum = b[ri];
        for (std::size_t j = ri + 1; j < n; ++j) sum -= a[ri * n + j] * x[j];
        x[ri] = sum / a[ri * n + ri];
    }
    return x;
}

ScalarField random_field(const GridPtr& grid, std::uint64_t seed) {
    ScalarField f(grid);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& v : f.values()) v = dist(rng);
    return f;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    std::vector<double> x(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& v : x) v = dist(rng);
    return x;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

double rel_l2_diff(std::span<const double> got, std::span<const double> want) {
    if (got.size() != want.size()) throw std::invalid_argument("rel_l2_diff: size mismatch");
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        diff += (got[i] - want[i]) * (got[i] - want[i]);
        scale += want[i] * want[i];
    }
    return std::sqrt(diff) / (scale > 0.0 ? std::sqrt(scale) : 1.0);
}

}  // namespace pit_test
