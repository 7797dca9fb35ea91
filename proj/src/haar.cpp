#include "dcs/haar.hpp"

#include <algorithm>
#include <cmath>

namespace dcs {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// In-place full-depth 1-D analysis on data[0..size) with stride.
void haar1d_forward(double* data, std::size_t size, std::size_t stride, double* tmp) {
    for (std::size_t half = size / 2; half >= 1; half /= 2) {
        for (std::size_t i = 0; i < half; ++i) {
            const double a = data[(2 * i) * stride];
            const double b = data[(2 * i + 1) * stride];
            tmp[i] = (a + b) * kInvSqrt2;
            tmp[half + i] = (a - b) * kInvSqrt2;
        }
        for (std::size_t i = 0; i < 2 * half; ++i) data[i * stride] = tmp[i];
        if (half == 1) break;
    }
}

void haar1d_inverse(double* data, std::size_t size, std::size_t stride, double* tmp) {
    for (std::size_t half = 1; half <= size / 2; half *= 2) {
        for (std::size_t i = 0; i < half; ++i) {
            const double s = data[i * stride];
            const double d = data[(half + i) * stride];
            tmp[2 * i] = (s + d) * kInvSqrt2;
            tmp[2 * i + 1] = (s - d) * kInvSqrt2;
        }
        for (std::size_t i = 0; i < 2 * half; ++i) data[i * stride] = tmp[i];
    }
}

void check_input(std::span<const double> v, const GridDims& dims, const char* what) {
    if (dims.n != dims.rows * dims.cols || dims.n == 0)
        throw ConfigError("haar: invalid dims");
    if (!is_pow2(dims.rows) || !is_pow2(dims.cols))
        throw ConfigError("haar: dims must be powers of two");
    if (v.size() != dims.n)
        throw ContractError(std::string(what) + ": expected vector of length " +
                            std::to_string(dims.n) + ", got " + std::to_string(v.size()));
}

}  // namespace

std::vector<double> haar_forward(std::span<const double> z_flat, const GridDims& dims) {
    check_input(z_flat, dims, "haar_forward");
    std::vector<double> c(z_flat.begin(), z_flat.end());
    std::vector<double> tmp(std::max(dims.rows, dims.cols));
    for (std::size_t r = 0; r < dims.rows; ++r)
        haar1d_forward(c.data() + r * dims.cols, dims.cols, 1, tmp.data());
    for (std::size_t col = 0; col < dims.cols; ++col)
        haar1d_forward(c.data() + col, dims.rows, dims.cols, tmp.data());
    return c;
}

std::vector<double> haar_inverse(std::span<const double> c, const GridDims& dims) {
    check_input(c, dims, "haar_inverse");
    std::vector<double> z(c.begin(), c.end());
    std::vector<double> tmp(std::max(dims.rows, dims.cols));
    for (std::size_t col = 0; col < dims.cols; ++col)
        haar1d_inverse(z.data() + col, dims.rows, dims.cols, tmp.data());
    for (std::size_t r = 0; r < dims.rows; ++r)
        haar1d_inverse(z.data() + r * dims.cols, dims.cols, 1, tmp.data());
    return z;
}

LinearOp HaarBasis::synthesis_op() const {
    LinearOp op;
    op.in_dim = dims.n;
    op.out_dim = dims.n;
    const GridDims d = dims;
    op.fwd = [d](std::span<const double> v, std::span<double> out) {
        std::vector<double> z = haar_inverse(v, d);
        for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i];
    };
    op.adj = [d](std::span<const double> u, std::span<double> out) {
        std::vector<double> c = haar_forward(u, d);
        for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
    };
    return op;
}

}  // namespace dcs
