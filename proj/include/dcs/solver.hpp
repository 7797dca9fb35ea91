#pragma once

#include <span>
#include <vector>

#include "dcs/grid.hpp"
#include "dcs/linear_op.hpp"

namespace dcs {

enum class StepRule { fixed, backtracking };

struct SolverParams {
    double lambda = 0.0;      // L1 weight
    std::size_t max_iter = 2000;
    double tol = 1e-8;        // relative objective-decrease stopping threshold
    StepRule step_rule = StepRule::fixed;
    double lipschitz_hint = 0.0;  // >0 skips the power-method estimate

    void validate() const;
};

struct SolveReport {
    std::size_t iterations = 0;
    double final_objective = 0.0;
    double kkt_residual = 0.0;
    bool converged = false;
};

// Sparse representation c = [c_x; c_y] over a grid.
struct CoeffVector {
    GridDims dims;
    std::vector<double> c;  // length 2 * dims.n
};

// Elementwise sign(v_i) * max(|v_i| - t, 0); the proximal map of t * ||.||_1.
std::vector<double> soft_threshold(std::span<const double> v, double t);

// Largest eigenvalue of A^T A estimated by power iteration (at most `iters`
// rounds, stopping when the eigenvalue estimate changes by < rel_tol).
double estimate_lipschitz(const LinearOp& a, std::size_t iters = 30, double rel_tol = 1e-3);

// 0.5 * ||A c - y||^2 + lambda * ||c||_1
double l1ls_objective(const LinearOp& a, std::span<const double> y,
                      std::span<const double> c, double lambda);

// Max-norm violation of the subgradient optimality conditions of the L1
// least-squares problem; zero iff c is a global minimizer.
double kkt_residual(std::span<const double> c, const LinearOp& a,
                    std::span<const double> y, double lambda);

// Accelerated proximal gradient (FISTA) with adaptive restart on objective
// increase; the reported objective sequence is non-increasing. Stops when the
// relative objective decrease drops below params.tol or max_iter is reached.
std::pair<std::vector<double>, SolveReport> fista_solve(const LinearOp& a,
                                                        std::span<const double> y,
                                                        const SolverParams& params,
                                                        std::span<const double> c0);

}  // namespace dcs
