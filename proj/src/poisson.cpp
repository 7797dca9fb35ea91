#include "dcs/poisson.hpp"

#include <cmath>

#include "dcs/diff_ops.hpp"

namespace dcs {

double mean_of(std::span<const double> v) {
    if (v.empty()) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

namespace {

void remove_mean(std::vector<double>& v) {
    const double m = mean_of(v);
    for (double& x : v) x -= m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace

SurfaceGrid integrate(const GradientField& g, double tol, std::size_t max_iter) {
    const GridDims dims = g.dims;
    if (g.zx.size() != dims.n || g.zy.size() != dims.n)
        throw ContractError("integrate: gradient lengths do not match dims");
    if (max_iter == 0) max_iter = 10 * dims.n;

    const DiffOps diffs = make_diff_ops(dims);

    // Normal operator z -> (Dx^T Dx + Dy^T Dy) z; its nullspace is the
    // constants, and the right-hand side Dx^T zx + Dy^T zy is orthogonal to
    // it, so CG stays in the zero-mean subspace. The mean is re-deflated
    // after each application to suppress rounding drift.
    auto apply_normal = [&](const std::vector<double>& v) {
        std::vector<double> out = diffs.dx.adjoint(diffs.dx.forward(v));
        std::vector<double> ady = diffs.dy.adjoint(diffs.dy.forward(v));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += ady[i];
        remove_mean(out);
        return out;
    };

    std::vector<double> rhs = diffs.dx.adjoint(g.zx);
    {
        std::vector<double> rhs_y = diffs.dy.adjoint(g.zy);
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += rhs_y[i];
    }
    remove_mean(rhs);

    std::vector<double> z(dims.n, 0.0);
    std::vector<double> r = rhs;
    std::vector<double> d = r;
    double rr = dot(r, r);
    const double rhs_norm = std::sqrt(rr);
    if (rhs_norm == 0.0) {
        SurfaceGrid out;
        out.dims = dims;
        out.z = std::move(z);
        return out;
    }

    const double stop = tol * rhs_norm;
    bool converged = false;
    for (std::size_t k = 0; k < max_iter; ++k) {
        if (std::sqrt(rr) <= stop) {
            converged = true;
            break;
        }
        std::vector<double> ad = apply_normal(d);
        const double dad = dot(d, ad);
        if (!(dad > 0.0) || !std::isfinite(dad))
            throw NumericalError("integrate: conjugate gradients broke down (d^T A d = " +
                                 std::to_string(dad) + ")");
        const double alpha = rr / dad;
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += alpha * d[i];
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= alpha * ad[i];
        const double rr_next = dot(r, r);
        const double beta = rr_next / rr;
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = r[i] + beta * d[i];
        rr = rr_next;
    }
    if (!converged && std::sqrt(rr) > stop)
        throw NumericalError("integrate: CG did not converge in " + std::to_string(max_iter) +
                             " iterations; final relative residual " +
                             std::to_string(std::sqrt(rr) / rhs_norm));

    remove_mean(z);
    SurfaceGrid out;
    out.dims = dims;
    out.z = std::move(z);
    return out;
}

SurfaceGrid align_mean(const SurfaceGrid& candidate, const SurfaceGrid& reference) {
    if (!(candidate.dims == reference.dims))
        throw ContractError("align_mean: dims mismatch");
    SurfaceGrid out = candidate;
    const double shift = mean_of(reference.z) - mean_of(candidate.z);
    for (double& x : out.z) x += shift;
    return out;
}

}  // namespace dcs
