#include "pit/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pit {

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            sum += val[k] * x[static_cast<std::size_t>(col[k])];
        }
        y[static_cast<std::size_t>(i)] = sum;
    }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(static_cast<std::size_t>(n));
    multiply(x, y);
    return y;
}

int CsrMatrix::diagonal_slot(int i) const {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
        if (col[k] == i) return k;
    }
    throw std::logic_error("CsrMatrix: missing diagonal entry");
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::vector<double> jacobi_inverse_diagonal(const CsrMatrix& a) {
    std::vector<double> inv(static_cast<std::size_t>(a.n), 1.0);
    for (int i = 0; i < a.n; ++i) {
        const double d = a.val[static_cast<std::size_t>(a.diagonal_slot(i))];
        if (d != 0.0) inv[static_cast<std::size_t>(i)] = 1.0 / d;
    }
    return inv;
}

// r = b - A x
void true_residual(const CsrMatrix& a, std::span<const double> b, std::span<const double> x,
                   std::span<double> r) {
    a.multiply(x, r);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
}

}  // namespace

KrylovResult solve_cg(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                      double rel_tol, int max_iterations) {
    const auto n = static_cast<std::size_t>(a.n);
    std::fill(x.begin(), x.end(), 0.0);
    const double norm_b = norm2(b);
    if (norm_b == 0.0) return {true, 0, 0.0};
    const double tol = rel_tol * norm_b;

    const std::vector<double> minv = jacobi_inverse_diagonal(a);
    std::vector<double> r(b.begin(), b.end());
    std::vector<double> z(n), p(n), q(n);

    auto apply_jacobi = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (std::size_t i = 0; i < n; ++i) out[i] = minv[i] * in[i];
    };

    apply_jacobi(r, z);
    p = z;
    double rz = dot(r, z);
    double res = norm2(r);
    int it = 0;
    bool stalled = false;

    while (true) {
        while (res > tol && it < max_iterations && !stalled) {
            a.multiply(p, q);
            const double pq = dot(p, q);
            if (pq == 0.0 || !std::isfinite(pq)) {
                stalled = true;
                break;
            }
            const double alpha = rz / pq;
            for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
            for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * q[i];
            ++it;
            res = norm2(r);
            if (!std::isfinite(res) || res <= tol) break;
            apply_jacobi(r, z);
            const double rz_new = dot(r, z);
            const double beta = rz_new / rz;
            for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
            rz = rz_new;
        }
        // confirm against the exact residual before declaring convergence
        true_residual(a, b, x, r);
        res = norm2(r);
        if (res <= tol) return {true, it, res / norm_b};
        if (it >= max_iterations || stalled || !std::isfinite(res)) {
            return {false, it, res / norm_b};
        }
        apply_jacobi(r, z);
        p = z;
        rz = dot(r, z);
    }
}

KrylovResult solve_bicgstab(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                            double rel_tol, int max_iterations) {
    const auto n = static_cast<std::size_t>(a.n);
    std::fill(x.begin(), x.end(), 0.0);
    const double norm_b = norm2(b);
    if (norm_b == 0.0) return {true, 0, 0.0};
    const double tol = rel_tol * norm_b;

    const std::vector<double> minv = jacobi_inverse_diagonal(a);
    std::vector<double> r(n), rtilde(n), p(n), phat(n), v(n), s(n), shat(n), t(n);

    double rho_prev = 1.0, alpha = 1.0, omega = 1.0, res = 0.0;
    int it = 0;
    bool restart = true;
    bool first_direction = true;

    while (it < max_iterations) {
        if (restart) {
            true_residual(a, b, x, r);
            res = norm2(r);
            if (res <= tol) return {true, it, res / norm_b};
            if (!std::isfinite(res)) return {false, it, res / norm_b};
            rtilde = r;
            first_direction = true;
            restart = false;
            rho_prev = 1.0;
            alpha = 1.0;
            omega = 1.0;
        }
        const double rho = dot(rtilde, r);
        if (rho == 0.0 || !std::isfinite(rho)) {
            restart = true;
            ++it;
            continue;
        }
        if (first_direction) {
            p = r;
            first_direction = false;
        } else {
            const double beta = (rho / rho_prev) * (alpha / omega);
            for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        for (std::size_t i = 0; i < n; ++i) phat[i] = minv[i] * p[i];
        a.multiply(phat, v);
        const double rv = dot(rtilde, v);
        if (rv == 0.0 || !std::isfinite(rv)) {
            restart = true;
            ++it;
            continue;
        }
        alpha = rho / rv;
        for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
        if (norm2(s) <= tol) {
            // half-iteration exit; keep going from the exact residual if spurious
            for (std::size_t i = 0; i < n; ++i) x[i] += alpha * phat[i];
            ++it;
            true_residual(a, b, x, r);
            res = norm2(r);
            if (res <= tol) return {true, it, res / norm_b};
            if (!std::isfinite(res)) return {false, it, res / norm_b};
            rtilde = r;
            first_direction = true;
            rho_prev = 1.0;
            alpha = 1.0;
            omega = 1.0;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) shat[i] = minv[i] * s[i];
        a.multiply(shat, t);
        const double tt = dot(t, t);
        omega = tt == 0.0 ? 0.0 : dot(t, s) / tt;
        for (std::size_t i = 0; i < n; ++i) x[i] += alpha * phat[i] + omega * shat[i];
        for (std::size_t i = 0; i < n; ++i) r[i] = s[i] - omega * t[i];
        ++it;
        res = norm2(r);
        if (!std::isfinite(res)) {
            restart = true;
            continue;
        }
        if (res <= tol) {
            true_residual(a, b, x, r);
            res = norm2(r);
            if (res <= tol) return {true, it, res / norm_b};
        }
        if (omega == 0.0) restart = true;
        rho_prev = rho;
    }
    true_residual(a, b, x, r);
    res = norm2(r);
    return {res <= tol, it, res / norm_b};
}

}  // namespace pit
