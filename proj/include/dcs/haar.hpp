#pragma once

#include <span>
#include <vector>

#include "dcs/grid.hpp"
#include "dcs/linear_op.hpp"

namespace dcs {

// 2-D orthonormal Haar transform at full decomposition depth, separable form:
// the full 1-D multilevel transform is applied to every row, then to every
// column. The resulting basis is the Kronecker product of two 1-D Haar
// matrices, so it handles rectangular power-of-two grids and round-trips
// exactly up to rounding. Coefficient index 0 is the DC component with value
// mean(z) * sqrt(n).

// Analysis direction (W^T): signal -> coefficients. Preserves the 2-norm.
std::vector<double> haar_forward(std::span<const double> z_flat, const GridDims& dims);

// Synthesis direction (W): coefficients -> signal. Exact inverse of
// haar_forward.
std::vector<double> haar_inverse(std::span<const double> c, const GridDims& dims);

struct HaarBasis {
    GridDims dims;

    // LinearOp for W: forward = synthesis, adjoint = analysis (W^T = W^-1).
    LinearOp synthesis_op() const;
};

}  // namespace dcs
