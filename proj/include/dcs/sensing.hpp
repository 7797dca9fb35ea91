#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dcs/linear_op.hpp"

namespace dcs {

// Dense i.i.d. Gaussian sensing matrix with entries N(0, 1/m), drawn
// row-major from a SplitMix64 stream, so identical (seed, m, n) reproduce a
// bit-identical operator.
struct SensingOp {
    std::uint64_t seed = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    std::shared_ptr<const std::vector<double>> matrix;  // row-major m x n
    LinearOp op;
};

SensingOp make_sensing(std::uint64_t seed, std::size_t m, std::size_t n);

}  // namespace dcs
