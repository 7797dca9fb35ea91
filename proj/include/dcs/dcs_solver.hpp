#pragma once

#include <vector>

#include "dcs/solver.hpp"
#include "dcs/system.hpp"

namespace dcs {

struct DcsParams {
    double lambda = 1e-5;        // L1 weight, forwarded to the inner solver
    double delta = 2.0;          // quadratic penalty weight on the constraint
    std::size_t outer_iters = 15;
    double constraint_tol = 1e-4;  // relative: stop when ||B c|| <= tol * ||c||
    SolverParams inner;
    bool record_trace = false;

    void validate() const;
};

// State after the final outer iteration.
struct DcsState {
    std::vector<double> c;  // 2n
    std::vector<double> p;  // n, Lagrange multipliers
    std::size_t t = 0;      // outer iterations executed
    double constraint_norm = 0.0;  // ||B c||_2 at the final iterate
};

// Per-outer-iteration snapshot, recorded when DcsParams::record_trace is set.
struct DcsTraceStep {
    std::size_t t = 0;
    double constraint_norm = 0.0;
    double inner_objective = 0.0;
    std::size_t inner_iterations = 0;
    std::vector<double> c;
    std::vector<double> p;
};

struct DcsResult {
    CoeffVector coeffs;
    DcsState state;
    SolveReport report;  // aggregated over inner solves
    std::vector<DcsTraceStep> trace;
};

// Multiplier iteration for the constrained problem
//   min 0.5 ||Phi c - y||^2 + lambda ||c||_1   s.t.  B c = 0.
// Each outer step minimizes the augmented objective
//   0.5 ||Phi c - y||^2 + lambda ||c||_1 + (delta/2) ||B c + p||^2
// by running the inner solver on the stacked operator [Phi; sqrt(delta) B]
// with stacked data [y; -sqrt(delta) p] (the two forms are equal), then
// updates p += B c. The penalty weight stays fixed across outer iterations;
// c is warm-started from the previous iterate.
DcsResult dcs_solve(const StackedSystem& sys, const DcsParams& params);

// z_x = W c_x, z_y = W c_y.
GradientField recover_gradients(const CoeffVector& coeffs, const StackedSystem& sys);

}  // namespace dcs
