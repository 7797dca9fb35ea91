#include "dcs/diff_ops.hpp"

namespace dcs {

namespace {

void check(std::span<const double> v, const GridDims& dims, const char* what) {
    if (v.size() != dims.n)
        throw ContractError(std::string(what) + ": expected vector of length " +
                            std::to_string(dims.n));
}

}  // namespace

std::vector<double> apply_dx(std::span<const double> v, const GridDims& dims) {
    check(v, dims, "apply_dx");
    std::vector<double> out(dims.n, 0.0);
    for (std::size_t r = 0; r < dims.rows; ++r) {
        const std::size_t base = r * dims.cols;
        for (std::size_t c = 0; c + 1 < dims.cols; ++c)
            out[base + c] = v[base + c + 1] - v[base + c];
    }
    return out;
}

std::vector<double> apply_dy(std::span<const double> v, const GridDims& dims) {
    check(v, dims, "apply_dy");
    std::vector<double> out(dims.n, 0.0);
    for (std::size_t r = 0; r + 1 < dims.rows; ++r) {
        const std::size_t base = r * dims.cols;
        for (std::size_t c = 0; c < dims.cols; ++c)
            out[base + c] = v[base + dims.cols + c] - v[base + c];
    }
    return out;
}

namespace {

// Adjoint of the 1-D forward-difference stencil, applied along x or y.
void dx_adjoint(std::span<const double> u, std::span<double> out, const GridDims& dims) {
    for (std::size_t r = 0; r < dims.rows; ++r) {
        const std::size_t base = r * dims.cols;
        for (std::size_t c = 0; c < dims.cols; ++c) {
            double acc = 0.0;
            if (c > 0) acc += u[base + c - 1];
            if (c + 1 < dims.cols) acc -= u[base + c];
            out[base + c] = acc;
        }
    }
}

void dy_adjoint(std::span<const double> u, std::span<double> out, const GridDims& dims) {
    for (std::size_t r = 0; r < dims.rows; ++r) {
        const std::size_t base = r * dims.cols;
        for (std::size_t c = 0; c < dims.cols; ++c) {
            double acc = 0.0;
            if (r > 0) acc += u[base - dims.cols + c];
            if (r + 1 < dims.rows) acc -= u[base + c];
            out[base + c] = acc;
        }
    }
}

}  // namespace

DiffOps make_diff_ops(const GridDims& dims) {
    if (dims.n != dims.rows * dims.cols || dims.n == 0)
        throw ConfigError("make_diff_ops: invalid dims");
    DiffOps ops;
    ops.dims = dims;

    ops.dx.in_dim = dims.n;
    ops.dx.out_dim = dims.n;
    ops.dx.fwd = [dims](std::span<const double> v, std::span<double> out) {
        std::vector<double> r = apply_dx(v, dims);
        for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i];
    };
    ops.dx.adj = [dims](std::span<const double> u, std::span<double> out) {
        dx_adjoint(u, out, dims);
    };

    ops.dy.in_dim = dims.n;
    ops.dy.out_dim = dims.n;
    ops.dy.fwd = [dims](std::span<const double> v, std::span<double> out) {
        std::vector<double> r = apply_dy(v, dims);
        for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i];
    };
    ops.dy.adj = [dims](std::span<const double> u, std::span<double> out) {
        dy_adjoint(u, out, dims);
    };
    return ops;
}

GradientField gradients_of(const SurfaceGrid& s) {
    GradientField g;
    g.dims = s.dims;
    g.zx = apply_dx(s.z, s.dims);
    g.zy = apply_dy(s.z, s.dims);
    return g;
}

}  // namespace dcs
