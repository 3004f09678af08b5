#include "pit/dense_oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "pit/errors.hpp"

namespace pit {

namespace {

double flat_norm(const std::vector<double>& x) {
    double sum = 0.0;
    for (double v : x) sum += v * v;
    return std::sqrt(sum);
}

double relative_difference(const std::vector<double>& got, const std::vector<double>& want) {
    if (got.size() != want.size()) throw std::invalid_argument("relative_difference: size mismatch");
    double diff = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        const double d = got[i] - want[i];
        diff += d * d;
    }
    const double scale = flat_norm(want);
    return std::sqrt(diff) / (scale > 0.0 ? scale : 1.0);
}

}  // namespace

DenseMatrix::DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("DenseMatrix: non-positive dimension");
    a_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

std::vector<double> DenseMatrix::multiply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != cols_) {
        throw std::invalid_argument("DenseMatrix::multiply: dimension mismatch");
    }
    std::vector<double> y(static_cast<std::size_t>(rows_), 0.0);
    for (int i = 0; i < rows_; ++i) {
        double sum = 0.0;
        for (int j = 0; j < cols_; ++j) sum += at(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = sum;
    }
    return y;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("DenseMatrix::multiply: dimension mismatch");
    DenseMatrix out(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const double aik = at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < other.cols_; ++j) out.at(i, j) += aik * other.at(k, j);
        }
    }
    return out;
}

DenseMatrix dense_inverse(const DenseMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("dense_inverse: matrix not square");
    const int n = m.rows();
    DenseMatrix work = m;
    DenseMatrix inv = DenseMatrix::identity(n);

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(work.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(work.at(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) throw std::invalid_argument("dense_inverse: singular matrix");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(work.at(pivot, j), work.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        }
        const double scale = 1.0 / work.at(col, col);
        for (int j = 0; j < n; ++j) {
            work.at(col, j) *= scale;
            inv.at(col, j) *= scale;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = work.at(r, col);
            if (factor == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                work.at(r, j) -= factor * work.at(col, j);
                inv.at(r, j) -= factor * inv.at(col, j);
            }
        }
    }
    return inv;
}

DenseBlockSystem assemble_dense_system(const BlockOperatorContext& ctx) {
    const int nodes = static_cast<int>(ctx.grid_ptr()->interior_count());
    const int count = ctx.block_count();
    const long flat = static_cast<long>(nodes) * count;
    if (flat > kDenseOracleLimit) {
        throw ConfigError("dense oracle limited to " + std::to_string(kDenseOracleLimit) +
                          " unknowns; requested " + std::to_string(flat) +
                          " (" + std::to_string(count) + " blocks x " + std::to_string(nodes) +
                          " nodes)");
    }

    // One propagation matrix per role suffices: the slabs are uniform and the
    // operator does not depend on time, so every slab applies the same map.
    DenseMatrix p_fine(nodes, nodes);
    DenseMatrix p_coarse(nodes, nodes);
    for (int j = 0; j < nodes; ++j) {
        ScalarField unit(ctx.grid_ptr());
        unit.values()[static_cast<std::size_t>(j)] = 1.0;
        const ScalarField fine_col = ctx.fine().propagate_homogeneous(unit, 0);
        const ScalarField coarse_col = ctx.coarse().propagate_homogeneous(unit, 0);
        for (int i = 0; i < nodes; ++i) {
            p_fine.at(i, j) = fine_col.values()[static_cast<std::size_t>(i)];
            p_coarse.at(i, j) = coarse_col.values()[static_cast<std::size_t>(i)];
        }
    }

    DenseBlockSystem sys;
    sys.block_count = count;
    sys.nodes_per_block = nodes;
    sys.F = DenseMatrix::identity(static_cast<int>(flat));
    sys.G = DenseMatrix::identity(static_cast<int>(flat));
    for (int n = 1; n < count; ++n) {
        for (int i = 0; i < nodes; ++i) {
            for (int j = 0; j < nodes; ++j) {
                sys.F.at(n * nodes + i, (n - 1) * nodes + j) = -p_fine.at(i, j);
                sys.G.at(n * nodes + i, (n - 1) * nodes + j) = -p_coarse.at(i, j);
            }
        }
    }
    sys.G_inverse = dense_inverse(sys.G);
    return sys;
}

std::vector<double> flatten(const BlockVector& v) {
    const int nodes = static_cast<int>(v.grid_ptr()->interior_count());
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(nodes) * v.block_count());
    for (int n = 0; n < v.block_count(); ++n) {
        const auto vals = v[n].values();
        out.insert(out.end(), vals.begin(), vals.end());
    }
    return out;
}

BlockVector unflatten(const std::vector<double>& x, const GridPtr& grid, int block_count) {
    const int nodes = static_cast<int>(grid->interior_count());
    if (static_cast<long>(x.size()) != static_cast<long>(nodes) * block_count) {
        throw std::invalid_argument("unflatten: flat size does not match blocks x nodes");
    }
    BlockVector v(grid, block_count);
    for (int n = 0; n < block_count; ++n) {
        auto vals = v[n].values();
        for (int i = 0; i < nodes; ++i) {
            vals[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(n) * nodes + i];
        }
    }
    return v;
}

bool OracleCheckReport::all_passed() const {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

OracleCheckReport run_oracle_checks(const BlockOperatorContext& ctx, SlabExecutor& exec,
                                    int trials, double tolerance, bool inject_fault) {
    if (trials < 1) throw std::invalid_argument("run_oracle_checks: trials must be >= 1");
    DenseBlockSystem sys = assemble_dense_system(ctx);
    if (inject_fault) {
        // Negative control: perturb the probed propagation entries so every
        // comparison below must report a miss.
        const int i = sys.nodes_per_block;  // first row of the second block
        sys.F.at(i, 0) += 0.5;
        sys.G.at(i, 0) += 0.5;
        sys.G_inverse.at(i, 0) += 0.5;
    }

    const int flat = sys.block_count * sys.nodes_per_block;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    OracleCheck f_check{"apply_F vs dense F", 0.0, false};
    OracleCheck ginv_check{"apply_G_inverse vs dense inverse", 0.0, false};
    for (int t = 0; t < trials; ++t) {
        std::vector<double> x(static_cast<std::size_t>(flat));
        for (auto& v : x) v = dist(rng);
        const BlockVector block_x = unflatten(x, ctx.grid_ptr(), sys.block_count);

        const std::vector<double> f_free = flatten(apply_F(ctx, block_x, exec));
        const std::vector<double> f_dense = sys.F.multiply(x);
        f_check.worst_relative_error =
            std::max(f_check.worst_relative_error, relative_difference(f_free, f_dense));

        const std::vector<double> g_free = flatten(apply_G_inverse(ctx, block_x));
        const std::vector<double> g_dense = sys.G_inverse.multiply(x);
        ginv_check.worst_relative_error =
            std::max(ginv_check.worst_relative_error, relative_difference(g_free, g_dense));
    }
    f_check.passed = f_check.worst_relative_error <= tolerance;
    ginv_check.passed = ginv_check.worst_relative_error <= tolerance;

    OracleCheck identity_check{"dense inverse times dense G vs identity", 0.0, false};
    const DenseMatrix product = sys.G_inverse.multiply(sys.G);
    for (int i = 0; i < flat; ++i) {
        for (int j = 0; j < flat; ++j) {
            const double want = i == j ? 1.0 : 0.0;
            identity_check.worst_relative_error =
                std::max(identity_check.worst_relative_error, std::abs(product.at(i, j) - want));
        }
    }
    identity_check.passed = identity_check.worst_relative_error <= tolerance;

    OracleCheckReport report;
    report.checks = {f_check, ginv_check, identity_check};
    return report;
}

}  // namespace pit
