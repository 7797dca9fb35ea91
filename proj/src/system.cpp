#include "dcs/system.hpp"

#include "dcs/rng.hpp"

namespace dcs {

LinearOp make_phi(const SensingOp& psi_x, const SensingOp& psi_y, const HaarBasis& haar) {
    LinearOp w = haar.synthesis_op();
    return block_diag(compose(psi_x.op, w), compose(psi_y.op, w));
}

LinearOp make_b_op(const DiffOps& diffs, const HaarBasis& haar) {
    const std::size_t n = haar.dims.n;
    LinearOp w = haar.synthesis_op();
    LinearOp tx = slice_op(2 * n, 0, n);
    LinearOp ty = slice_op(2 * n, n, n);
    return subtract(compose(diffs.dy, compose(w, tx)), compose(diffs.dx, compose(w, ty)));
}

StackedSystem assemble_system(const SurfaceGrid& z, std::uint64_t psi_seed_x,
                              std::uint64_t psi_seed_y, std::size_t m,
                              const NoiseSpec& noise, std::uint64_t noise_seed) {
    if (z.z.size() != z.dims.n)
        throw ContractError("assemble_system: surface storage does not match dims");
    const GridDims dims = GridDims::make(z.dims.rows, z.dims.cols);
    if (m == 0 || m > dims.n)
        throw ConfigError("assemble_system: need 0 < m <= n");

    StackedSystem sys;
    sys.dims = dims;
    sys.m = m;
    sys.psi_x = make_sensing(psi_seed_x, m, dims.n);
    sys.psi_y = make_sensing(psi_seed_y, m, dims.n);
    sys.haar = HaarBasis{dims};
    sys.diffs = make_diff_ops(dims);
    sys.phi = make_phi(sys.psi_x, sys.psi_y, sys.haar);
    sys.b_op = make_b_op(sys.diffs, sys.haar);

    const std::vector<double> zx = apply_dx(z.z, dims);
    const std::vector<double> zy = apply_dy(z.z, dims);
    std::vector<double> bx = sys.psi_x.op.forward(zx);
    std::vector<double> by = sys.psi_y.op.forward(zy);
    bx = apply_noise(bx, noise, mix_seed(noise_seed, 0x78));  // 'x'
    by = apply_noise(by, noise, mix_seed(noise_seed, 0x79));  // 'y'

    sys.y.resize(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        sys.y[i] = bx[i];
        sys.y[m + i] = by[i];
    }
    return sys;
}

}  // namespace dcs
