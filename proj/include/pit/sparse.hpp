#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pit {

/// Row-compressed sparse matrix. Every row stores its diagonal entry even
/// when the value is zero, which keeps shifted copies (I + dt*A) cheap.
struct CsrMatrix {
    int n = 0;
    std::vector<int> row_ptr;  // size n + 1
    std::vector<int> col;
    std::vector<double> val;

    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;

    /// Index into val of the diagonal entry of row i.
    int diagonal_slot(int i) const;
};

struct KrylovResult {
    bool converged = false;
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Preconditioned conjugate gradient (Jacobi) for symmetric positive
/// definite systems. Writes the solution into x (input ignored).
KrylovResult solve_cg(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                      double rel_tol, int max_iterations);

/// Jacobi-preconditioned BiCGStab for nonsymmetric systems.
KrylovResult solve_bicgstab(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                            double rel_tol, int max_iterations);

}  // namespace pit
