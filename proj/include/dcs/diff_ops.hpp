#pragma once

#include <span>
#include <vector>

#include "dcs/grid.hpp"
#include "dcs/linear_op.hpp"

namespace dcs {

// Forward first differences with a replicated last sample (Neumann edge), so
// the last difference along each line is exactly zero. Both operators are
// Kronecker products of the same 1-D stencil with an identity, hence they
// commute exactly: dx(dy(v)) == dy(dx(v)) in floating point, which is what
// makes the discrete cross-derivative identity D_x z_y = D_y z_x hold.
//
// Convention: x runs along columns (dx differences within a row), y runs
// along rows.
struct DiffOps {
    GridDims dims;
    LinearOp dx;
    LinearOp dy;
};

DiffOps make_diff_ops(const GridDims& dims);

// Direct applications (same maps as DiffOps::dx / dy).
std::vector<double> apply_dx(std::span<const double> v, const GridDims& dims);
std::vector<double> apply_dy(std::span<const double> v, const GridDims& dims);

// Gradient field of a surface: (dx z, dy z).
GradientField gradients_of(const SurfaceGrid& s);

}  // namespace dcs
