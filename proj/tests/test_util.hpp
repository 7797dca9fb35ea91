#pragma once

#include <cmath>
#include <vector>

#include "dcs/grid.hpp"
#include "dcs/linear_op.hpp"
#include "dcs/rng.hpp"

namespace testutil {

inline std::vector<double> random_vector(std::size_t n, dcs::SplitMix64& rng) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.next_gaussian();
    return v;
}

inline double norm2(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// |<A u, v> - <u, A' v>| <= tol * (||u|| ||v|| + 1) over `trials` random pairs.
inline bool adjoint_consistent(const dcs::LinearOp& op, std::size_t trials = 20,
                               double tol = 1e-8, std::uint64_t seed = 1234) {
    dcs::SplitMix64 rng(seed);
    for (std::size_t k = 0; k < trials; ++k) {
        const std::vector<double> u = random_vector(op.in_dim, rng);
        const std::vector<double> v = random_vector(op.out_dim, rng);
        const double lhs = dot(op.forward(u), v);
        const double rhs = dot(u, op.adjoint(v));
        if (std::abs(lhs - rhs) > tol * (norm2(u) * norm2(v) + 1.0)) return false;
    }
    return true;
}

// Dense row-major (m x n) * (n x p) -> (m x p).
inline std::vector<double> matmul(const std::vector<double>& a, const std::vector<double>& b,
                                  std::size_t m, std::size_t n, std::size_t p) {
    std::vector<double> c(m * p, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a[i * n + k];
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < p; ++j) c[i * p + j] += aik * b[k * p + j];
        }
    return c;
}

// Kronecker product of (ra x ca) and (rb x cb), row-major.
inline std::vector<double> kron(const std::vector<double>& a, std::size_t ra, std::size_t ca,
                                const std::vector<double>& b, std::size_t rb, std::size_t cb) {
    std::vector<double> out(ra * rb * ca * cb, 0.0);
    const std::size_t cols = ca * cb;
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ca; ++j)
            for (std::size_t k = 0; k < rb; ++k)
                for (std::size_t l = 0; l < cb; ++l)
                    out[(i * rb + k) * cols + (j * cb + l)] = a[i * ca + j] * b[k * cb + l];
    return out;
}

// Gaussian elimination with partial pivoting; solves A x = b for square A.
inline std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b,
                                       std::size_t n) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
            std::swap(b[col], b[pivot]);
        }
        const double d = a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / d;
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= a[i * n + j] * x[j];
        x[i] = acc / a[i * n + i];
    }
    return x;
}

// Dense normal-equations solution of the gradient-integration problem, with
// the constant nullspace removed by a rank-one shift: (D'D + ee'/n) z = D'g
// has the zero-mean least-squares solution as its unique answer because the
// right-hand side is orthogonal to constants (rows of D sum to zero).
inline std::vector<double> dense_integrate_oracle(const dcs::GradientField& g) {
    const dcs::GridDims d = g.dims;
    const std::size_t n = d.n;
    const std::size_t rows = d.rows, cols = d.cols;

    std::vector<double> dx(n * n, 0.0), dy(n * n, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t i = r * cols + c;
            if (c + 1 < cols) {
                dx[i * n + i + 1] = 1.0;
                dx[i * n + i] = -1.0;
            }
            if (r + 1 < rows) {
                dy[i * n + i + cols] = 1.0;
                dy[i * n + i] = -1.0;
            }
        }

    std::vector<double> normal(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 1.0 / static_cast<double>(n);  // rank-one deflation
            for (std::size_t k = 0; k < n; ++k)
                acc += dx[k * n + i] * dx[k * n + j] + dy[k * n + i] * dy[k * n + j];
            normal[i * n + j] = acc;
        }

    std::vector<double> rhs(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            rhs[i] += dx[k * n + i] * g.zx[k] + dy[k * n + i] * g.zy[k];

    return dense_solve(normal, rhs, n);
}

// Full-depth orthonormal 1-D Haar synthesis matrix (size x size, row-major),
// built column by column from the recursive averaging/differencing pattern --
// independent of the library's transform code.
inline std::vector<double> haar1d_synthesis_matrix(std::size_t size) {
    // Column j of W is the inverse transform of the j-th unit coefficient,
    // constructed by explicit band upsampling.
    std::vector<double> w(size * size, 0.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < size; ++j) {
        std::vector<double> coeff(size, 0.0);
        coeff[j] = 1.0;
        // Undo the decomposition levels smallest-band first.
        for (std::size_t half = 1; half <= size / 2; half *= 2) {
            std::vector<double> next(coeff);
            for (std::size_t i = 0; i < half; ++i) {
                next[2 * i] = (coeff[i] + coeff[half + i]) * inv_sqrt2;
                next[2 * i + 1] = (coeff[i] - coeff[half + i]) * inv_sqrt2;
            }
            coeff = std::move(next);
        }
        for (std::size_t i = 0; i < size; ++i) w[i * size + j] = coeff[i];
    }
    return w;
}

}  // namespace testutil
