#include "dcs/sensing.hpp"

#include <cmath>

#include "dcs/rng.hpp"

namespace dcs {

SensingOp make_sensing(std::uint64_t seed, std::size_t m, std::size_t n) {
    if (m == 0 || m > n)
        throw ConfigError("make_sensing: need 0 < m <= n, got m=" + std::to_string(m) +
                          " n=" + std::to_string(n));
    std::vector<double> entries(m * n);
    SplitMix64 rng(seed);
    const double sigma = 1.0 / std::sqrt(static_cast<double>(m));
    for (double& a : entries) a = rng.next_gaussian() * sigma;
    auto mat = std::make_shared<const std::vector<double>>(std::move(entries));

    SensingOp s;
    s.seed = seed;
    s.m = m;
    s.n = n;
    s.matrix = mat;
    s.op = dense_op(m, n, mat);
    return s;
}

}  // namespace dcs
