#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "dcs/errors.hpp"

namespace dcs {

// Matrix-free linear operator: a pair of maps (forward, adjoint) plus the
// dimensions they connect. Everything in this library (W, D, Psi, Phi, B and
// their compositions) is carried through this one type, so an adjoint
// consistency test covers all of them uniformly.
//
// Operators are immutable after construction; apply() from many threads at
// once is safe as long as the captured state is not mutated (none of the
// factories below capture mutable state).
struct LinearOp {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    // Both callbacks write into a pre-sized output span.
    std::function<void(std::span<const double>, std::span<double>)> fwd;
    std::function<void(std::span<const double>, std::span<double>)> adj;

    std::vector<double> forward(std::span<const double> v) const {
        if (v.size() != in_dim)
            throw ContractError("LinearOp::forward: expected input of length " +
                                std::to_string(in_dim) + ", got " + std::to_string(v.size()));
        std::vector<double> out(out_dim, 0.0);
        fwd(v, out);
        return out;
    }

    std::vector<double> adjoint(std::span<const double> u) const {
        if (u.size() != out_dim)
            throw ContractError("LinearOp::adjoint: expected input of length " +
                                std::to_string(out_dim) + ", got " + std::to_string(u.size()));
        std::vector<double> out(in_dim, 0.0);
        adj(u, out);
        return out;
    }
};

// A is applied after B: (A o B) v = A (B v).
LinearOp compose(LinearOp a, LinearOp b);

// diag{A, B}: [x1; x2] -> [A x1; B x2]. Cross-block leakage is structurally
// zero, not merely small.
LinearOp block_diag(LinearOp a, LinearOp b);

// [A; B]: v -> [A v; B v] with adjoint [u1; u2] -> A' u1 + B' u2.
LinearOp vstack(LinearOp a, LinearOp b);

// A - B (same shapes).
LinearOp subtract(LinearOp a, LinearOp b);

// alpha * A.
LinearOp scale(double alpha, LinearOp a);

LinearOp identity_op(std::size_t n);
LinearOp zero_op(std::size_t in_dim, std::size_t out_dim);

// Selector picking [offset, offset+len) out of a length-in_dim vector;
// adjoint scatters back with zero padding. Realizes T_x / T_y.
LinearOp slice_op(std::size_t in_dim, std::size_t offset, std::size_t len);

// Dense row-major matrix wrapper (sensing matrices, test oracles).
LinearOp dense_op(std::size_t m, std::size_t n, std::vector<double> row_major);
LinearOp dense_op(std::size_t m, std::size_t n,
                  std::shared_ptr<const std::vector<double>> row_major);

// Materializes A as a dense row-major out_dim x in_dim matrix by applying it
// to unit vectors. Intended for small oracle tests only.
std::vector<double> materialize(const LinearOp& a);

}  // namespace dcs
