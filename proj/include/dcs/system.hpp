#pragma once

#include <cstdint>

#include "dcs/diff_ops.hpp"
#include "dcs/haar.hpp"
#include "dcs/noise.hpp"
#include "dcs/sensing.hpp"

namespace dcs {

// One assembled problem instance: the block-diagonal measurement operator
// Phi = diag{Psi_x W, Psi_y W}, the cross-derivative constraint operator
// B = D_y W T_x - D_x W T_y (both matrix-free), and the stacked measurement
// vector y = [b_x; b_y]. T_x / T_y are the first/second-half selectors on the
// coefficient vector c = [c_x; c_y].
struct StackedSystem {
    GridDims dims;
    std::size_t m = 0;  // measurements per axis
    SensingOp psi_x;
    SensingOp psi_y;
    HaarBasis haar;
    DiffOps diffs;
    LinearOp phi;   // 2n -> 2m
    LinearOp b_op;  // 2n -> n
    std::vector<double> y;  // 2m
};

// Computes z_x = dx(z), z_y = dy(z), measures b = Psi z + noise per axis
// (noise streams derived from noise_seed per axis), and assembles the
// operators. Noise is applied to the measurement vectors, not the gradients.
StackedSystem assemble_system(const SurfaceGrid& z, std::uint64_t psi_seed_x,
                              std::uint64_t psi_seed_y, std::size_t m,
                              const NoiseSpec& noise, std::uint64_t noise_seed);

// The two operators alone, for callers that bring their own measurements.
LinearOp make_phi(const SensingOp& psi_x, const SensingOp& psi_y, const HaarBasis& haar);
LinearOp make_b_op(const DiffOps& diffs, const HaarBasis& haar);

}  // namespace dcs
