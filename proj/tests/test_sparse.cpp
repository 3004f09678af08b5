#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pit/sparse.hpp"

using namespace pit;

namespace {

// Tridiagonal matrix with the given bands, stored with explicit diagonals.
CsrMatrix tridiag(int n, double lower, double diag, double upper) {
    CsrMatrix m;
    m.n = n;
    m.row_ptr.push_back(0);
    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            m.col.push_back(i - 1);
            m.val.push_back(lower);
        }
        m.col.push_back(i);
        m.val.push_back(diag);
        if (i + 1 < n) {
            m.col.push_back(i + 1);
            m.val.push_back(upper);
        }
        m.row_ptr.push_back(static_cast<int>(m.col.size()));
    }
    return m;
}

std::vector<double> dense_of(const CsrMatrix& m) {
    std::vector<double> a(static_cast<std::size_t>(m.n) * m.n, 0.0);
    for (int i = 0; i < m.n; ++i) {
        for (int s = m.row_ptr[i]; s < m.row_ptr[i + 1]; ++s) {
            a[static_cast<std::size_t>(i) * m.n + m.col[s]] = m.val[s];
        }
    }
    return a;
}

}  // namespace

TEST_CASE("csr multiply matches a hand computation") {
    const CsrMatrix m = tridiag(3, -1.0, 2.0, -1.0);
    const std::vector<double> x = {1.0, 2.0, 3.0};
    const std::vector<double> y = m.multiply(x);
    CHECK(y[0] == doctest::Approx(2.0 * 1 - 2));      // 0
    CHECK(y[1] == doctest::Approx(-1 + 4 - 3));       // 0
    CHECK(y[2] == doctest::Approx(-2 + 6));           // 4
}

TEST_CASE("diagonal slot finds the stored diagonal") {
    const CsrMatrix m = tridiag(4, -1.0, 5.0, -2.0);
    for (int i = 0; i < m.n; ++i) {
        CHECK(m.val[static_cast<std::size_t>(m.diagonal_slot(i))] == 5.0);
        CHECK(m.col[static_cast<std::size_t>(m.diagonal_slot(i))] == i);
    }
}

TEST_CASE("cg solves an SPD system to the elimination oracle") {
    const int n = 12;
    const CsrMatrix m = tridiag(n, -1.0, 2.5, -1.0);
    const std::vector<double> b = pit_test::random_vector(n, 7);
    std::vector<double> x(n, 0.0);

    const KrylovResult res = solve_cg(m, b, x, 1e-12, 10 * n);
    CHECK(res.converged);
    CHECK(res.relative_residual <= 1e-12);

    const std::vector<double> expected = pit_test::gauss_solve(dense_of(m), b);
    CHECK(pit_test::rel_l2_diff(x, expected) <= 1e-10);
}

TEST_CASE("bicgstab solves a nonsymmetric system to the elimination oracle") {
    const int n = 12;
    const CsrMatrix m = tridiag(n, -1.5, 3.0, -0.25);
    const std::vector<double> b = pit_test::random_vector(n, 8);
    std::vector<double> x(n, 0.0);

    const KrylovResult res = solve_bicgstab(m, b, x, 1e-12, 10 * n);
    CHECK(res.converged);
    CHECK(res.relative_residual <= 1e-12);

    const std::vector<double> expected = pit_test::gauss_solve(dense_of(m), b);
    CHECK(pit_test::rel_l2_diff(x, expected) <= 1e-10);
}

TEST_CASE("zero right-hand side returns the exact zero solution") {
    const CsrMatrix m = tridiag(5, -1.0, 2.0, -1.0);
    const std::vector<double> b(5, 0.0);
    std::vector<double> x(5, 9.0);  // input must be ignored

    for (auto* solve : {&solve_cg, &solve_bicgstab}) {
        std::fill(x.begin(), x.end(), 9.0);
        const KrylovResult res = (*solve)(m, b, x, 1e-12, 50);
        CHECK(res.converged);
        CHECK(res.iterations == 0);
        for (double v : x) CHECK(v == 0.0);
    }
}

TEST_CASE("identity system is solved exactly in one iteration") {
    const CsrMatrix m = tridiag(6, 0.0, 1.0, 0.0);
    const std::vector<double> b = pit_test::random_vector(6, 9);
    std::vector<double> x(6, 0.0);

    const KrylovResult res = solve_cg(m, b, x, 1e-12, 50);
    CHECK(res.converged);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(x[i] == b[i]);  // bitwise

    std::fill(x.begin(), x.end(), 0.0);
    const KrylovResult res2 = solve_bicgstab(m, b, x, 1e-12, 50);
    CHECK(res2.converged);
    CHECK(pit_test::max_abs_diff(x, b) == 0.0);
}

TEST_CASE("solvers report failure honestly when capped") {
    // One iteration cannot solve this system from x = 0.
    const int n = 40;
    const CsrMatrix m = tridiag(n, -1.0, 2.0001, -1.0);
    const std::vector<double> b = pit_test::random_vector(n, 10);
    std::vector<double> x(n, 0.0);

    const KrylovResult res = solve_cg(m, b, x, 1e-14, 1);
    CHECK_FALSE(res.converged);
    CHECK(res.relative_residual > 1e-14);
}
