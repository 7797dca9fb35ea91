#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dcs/errors.hpp"

namespace dcs {

inline bool is_pow2(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

// H x W grid shape. Both sides must be powers of two (full-depth orthonormal
// Haar decomposition requires it).
struct GridDims {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t n = 0;

    static GridDims make(std::size_t rows, std::size_t cols) {
        if (rows == 0 || cols == 0)
            throw ConfigError("GridDims: rows and cols must be positive");
        if (!is_pow2(rows) || !is_pow2(cols))
            throw ConfigError("GridDims: rows and cols must be powers of two, got " +
                              std::to_string(rows) + "x" + std::to_string(cols));
        return GridDims{rows, cols, rows * cols};
    }

    bool operator==(const GridDims&) const = default;
};

// Row-major height map z(row, col).
struct SurfaceGrid {
    GridDims dims;
    std::vector<double> z;
    std::string label;

    double& at(std::size_t r, std::size_t c) { return z[r * dims.cols + c]; }
    double at(std::size_t r, std::size_t c) const { return z[r * dims.cols + c]; }
};

// Flattened partial derivatives of a surface, same row-major layout.
struct GradientField {
    GridDims dims;
    std::vector<double> zx;
    std::vector<double> zy;
};

}  // namespace dcs
