#pragma once

#include <span>

#include "dcs/grid.hpp"

namespace dcs {

// Least-squares integration of a (possibly inconsistent) gradient field:
// minimizes ||D_x z - zx||^2 + ||D_y z - zy||^2 by conjugate gradients on the
// normal equations D^T D z = D^T g, with the Neumann boundary inherited from
// the difference operators. The solution is only defined up to a constant;
// the zero-mean representative is returned.
SurfaceGrid integrate(const GradientField& g, double tol = 1e-10, std::size_t max_iter = 0);

// Shifts candidate by mean(reference) - mean(candidate).
SurfaceGrid align_mean(const SurfaceGrid& candidate, const SurfaceGrid& reference);

double mean_of(std::span<const double> v);

}  // namespace dcs
