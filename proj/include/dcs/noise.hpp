#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dcs/errors.hpp"

namespace dcs {

enum class NoiseKind { none, gaussian, laplace, salt_pepper };

NoiseKind noise_kind_from_string(const std::string& s);
std::string to_string(NoiseKind k);

// Measurement-noise description. `level` means: sigma for gaussian, scale b
// for laplace, corruption probability p in [0,1] for salt_pepper. When
// `relative` is set (gaussian/laplace only), the effective scale is
// level * RMS(v) of the vector being corrupted, which is how the shipped
// defaults express "5% noise" without knowing measurement magnitudes up
// front. Salt-and-pepper spikes are +-amplitude * max|v| by definition, since
// real-valued measurements have no pixel range.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::none;
    double level = 0.0;
    double amplitude = 1.0;  // spike magnitude factor, salt_pepper only
    bool relative = false;

    void validate() const;
};

// Adds noise per spec; deterministic given (v, spec, seed). The input is
// never modified.
std::vector<double> apply_noise(std::span<const double> v, const NoiseSpec& spec,
                                std::uint64_t seed);

// Inverse-CDF transform of a uniform draw u in (0,1) to Laplace(0, b).
double laplace_sample(double u, double b);

}  // namespace dcs
