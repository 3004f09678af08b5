#pragma once

#include <string>
#include <vector>

#include "pit/block_system.hpp"

namespace pit {

/// Small dense row-major matrix for the verification oracles. Not meant for
/// production-size problems; assemble_dense_system guards against those.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols);

    static DenseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::vector<double> multiply(const std::vector<double>& x) const;
    DenseMatrix multiply(const DenseMatrix& other) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

/// Gauss-Jordan inverse with partial pivoting. Throws on singular input.
DenseMatrix dense_inverse(const DenseMatrix& m);

/// Explicit copies of the continuity operator F, the coarse operator G, and
/// the numerically inverted G, all in flat (block-major) coordinates.
struct DenseBlockSystem {
    DenseMatrix F;
    DenseMatrix G;
    DenseMatrix G_inverse;
    int block_count = 0;
    int nodes_per_block = 0;
};

/// Largest flat dimension (block_count * interior nodes) the oracle accepts.
inline constexpr int kDenseOracleLimit = 2000;

/// Build the dense system by probing the propagators with unit fields.
/// Quadratic in the flat dimension; throws ConfigError above the size guard.
DenseBlockSystem assemble_dense_system(const BlockOperatorContext& ctx);

std::vector<double> flatten(const BlockVector& v);
BlockVector unflatten(const std::vector<double>& x, const GridPtr& grid, int block_count);

struct OracleCheck {
    std::string name;
    double worst_relative_error = 0.0;
    bool passed = false;
};

struct OracleCheckReport {
    std::vector<OracleCheck> checks;
    bool all_passed() const;
};

/// Cross-check the matrix-free operators against the dense oracle on seeded
/// random block vectors, and the dense inverse against the dense forward
/// operator. `inject_fault` corrupts the probed propagation matrices first, as
/// a negative control: a working checker must then report failures.
OracleCheckReport run_oracle_checks(const BlockOperatorContext& ctx, SlabExecutor& exec,
                                    int trials, double tolerance, bool inject_fault = false);

}  // namespace pit
