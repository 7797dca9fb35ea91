#include "dcs/metrics.hpp"

#include <cmath>
#include <limits>

#include "dcs/diff_ops.hpp"
#include "dcs/poisson.hpp"

namespace dcs {

namespace {

// Mean via a provisional offset: exact for constant vectors, so that mean
// removal of a constant estimate leaves literal zeros (the zero-estimate
// case must score exactly 0 dB).
double shifted_mean(std::span<const double> v) {
    const double base = v.front();
    double acc = 0.0;
    for (double x : v) acc += x - base;
    return base + acc / static_cast<double>(v.size());
}

}  // namespace

double snr_db(std::span<const double> reference, std::span<const double> estimate) {
    if (reference.size() != estimate.size())
        throw ContractError("snr_db: length mismatch");
    if (reference.empty()) throw ContractError("snr_db: empty vectors");

    const double mr = shifted_mean(reference);
    const double me = shifted_mean(estimate);
    double signal = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double r = reference[i] - mr;
        const double e = estimate[i] - me;
        signal += r * r;
        error += (r - e) * (r - e);
    }
    if (signal == 0.0)
        throw MetricError("snr_db: reference has zero energy after mean removal");
    if (error == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal / error);
}

Score score(const SurfaceGrid& reference, const GradientField& recon_gradients) {
    if (!(reference.dims == recon_gradients.dims))
        throw ContractError("score: dims mismatch");

    const SurfaceGrid integrated = integrate(recon_gradients);
    const SurfaceGrid aligned = align_mean(integrated, reference);

    Score s;
    s.snr_surface_db = snr_db(reference.z, aligned.z);

    const GradientField ref_g = gradients_of(reference);
    s.snr_gradient_db = 0.5 * (snr_db(ref_g.zx, recon_gradients.zx) +
                               snr_db(ref_g.zy, recon_gradients.zy));

    double acc = 0.0;
    for (std::size_t i = 0; i < reference.z.size(); ++i) {
        const double d = aligned.z[i] - reference.z[i];
        acc += d * d;
    }
    s.rmse = std::sqrt(acc / static_cast<double>(reference.z.size()));
    return s;
}

}  // namespace dcs
