#include "dcs/dcs_solver.hpp"

#include <cmath>

#include "dcs/haar.hpp"

namespace dcs {

void DcsParams::validate() const {
    if (!(delta > 0.0)) throw ContractError("DcsParams: delta must be > 0");
    if (outer_iters < 1) throw ContractError("DcsParams: outer_iters must be >= 1");
    if (!(constraint_tol > 0.0)) throw ContractError("DcsParams: constraint_tol must be > 0");
    inner.validate();
}

namespace {

double norm2(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

}  // namespace

DcsResult dcs_solve(const StackedSystem& sys, const DcsParams& params) {
    params.validate();
    const std::size_t n = sys.dims.n;
    const std::size_t two_n = 2 * n;
    if (sys.phi.in_dim != two_n || sys.b_op.in_dim != two_n)
        throw ContractError("dcs_solve: system operators do not match dims");

    const double sqrt_delta = std::sqrt(params.delta);
    const LinearOp stacked = vstack(sys.phi, scale(sqrt_delta, sys.b_op));

    // The stacked operator is the same for every outer iteration, so one
    // spectral-norm estimate serves all inner solves.
    SolverParams inner = params.inner;
    inner.lambda = params.lambda;
    if (inner.lipschitz_hint <= 0.0) inner.lipschitz_hint = estimate_lipschitz(stacked);

    const std::size_t b_dim = sys.b_op.out_dim;
    std::vector<double> stacked_y(sys.y.size() + b_dim, 0.0);
    for (std::size_t i = 0; i < sys.y.size(); ++i) stacked_y[i] = sys.y[i];

    DcsResult result;
    result.coeffs.dims = sys.dims;
    std::vector<double> c(two_n, 0.0);
    std::vector<double> p(b_dim, 0.0);

    SolveReport aggregate;
    std::size_t t = 0;
    double constraint_norm = 0.0;
    for (; t < params.outer_iters;) {
        for (std::size_t i = 0; i < b_dim; ++i)
            stacked_y[sys.y.size() + i] = -sqrt_delta * p[i];

        SolveReport rep;
        try {
            auto [c_next, inner_rep] = fista_solve(stacked, stacked_y, inner, c);
            c = std::move(c_next);
            rep = inner_rep;
        } catch (const NumericalError& e) {
            throw NumericalError("dcs_solve: inner solve failed at outer iteration " +
                                 std::to_string(t + 1) + ": " + e.what());
        }
        ++t;

        std::vector<double> bc = sys.b_op.forward(c);
        for (std::size_t i = 0; i < b_dim; ++i) p[i] += bc[i];

        constraint_norm = norm2(bc);
        if (!std::isfinite(constraint_norm))
            throw NumericalError("dcs_solve: non-finite constraint norm at outer iteration " +
                                 std::to_string(t));

        aggregate.iterations += rep.iterations;
        aggregate.final_objective = rep.final_objective;
        aggregate.kkt_residual = rep.kkt_residual;
        aggregate.converged = rep.converged;

        if (params.record_trace) {
            DcsTraceStep step;
            step.t = t;
            step.constraint_norm = constraint_norm;
            step.inner_objective = rep.final_objective;
            step.inner_iterations = rep.iterations;
            step.c = c;
            step.p = p;
            result.trace.push_back(std::move(step));
        }

        if (constraint_norm <= params.constraint_tol * norm2(c)) break;
    }

    aggregate.converged = aggregate.converged && constraint_norm <= params.constraint_tol * norm2(c);

    result.coeffs.c = c;
    result.state.c = std::move(c);
    result.state.p = std::move(p);
    result.state.t = t;
    result.state.constraint_norm = constraint_norm;
    result.report = aggregate;
    return result;
}

GradientField recover_gradients(const CoeffVector& coeffs, const StackedSystem& sys) {
    const std::size_t n = sys.dims.n;
    if (coeffs.c.size() != 2 * n)
        throw ContractError("recover_gradients: coefficient vector must have length 2n");
    GradientField g;
    g.dims = sys.dims;
    g.zx = haar_inverse(std::span<const double>(coeffs.c).subspan(0, n), sys.dims);
    g.zy = haar_inverse(std::span<const double>(coeffs.c).subspan(n, n), sys.dims);
    return g;
}

}  // namespace dcs
