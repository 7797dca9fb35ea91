#pragma once

#include <span>

#include "dcs/grid.hpp"

namespace dcs {

struct Score {
    double snr_surface_db = 0.0;   // +infinity when the error energy is 0
    double snr_gradient_db = 0.0;  // mean of the per-axis gradient SNRs
    double rmse = 0.0;             // surface-domain, after mean alignment
};

// 10 log10( ||r||^2 / ||r - e||^2 ) with both vectors mean-removed first
// (integration only determines a surface up to a constant). Returns +inf
// when the error energy is exactly zero; throws MetricError when the
// mean-removed reference carries no energy.
double snr_db(std::span<const double> reference, std::span<const double> estimate);

// Full reconstruction score: integrates the recovered gradients, aligns the
// mean against the reference, and reports surface SNR, gradient SNR and RMSE.
Score score(const SurfaceGrid& reference, const GradientField& recon_gradients);

}  // namespace dcs
