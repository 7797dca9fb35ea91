#include "dcs/noise.hpp"

#include <algorithm>
#include <cmath>

#include "dcs/rng.hpp"

namespace dcs {

NoiseKind noise_kind_from_string(const std::string& s) {
    if (s == "none") return NoiseKind::none;
    if (s == "gaussian") return NoiseKind::gaussian;
    if (s == "laplace") return NoiseKind::laplace;
    if (s == "salt_pepper") return NoiseKind::salt_pepper;
    throw ConfigError("unknown noise kind: '" + s + "'");
}

std::string to_string(NoiseKind k) {
    switch (k) {
        case NoiseKind::none: return "none";
        case NoiseKind::gaussian: return "gaussian";
        case NoiseKind::laplace: return "laplace";
        case NoiseKind::salt_pepper: return "salt_pepper";
    }
    throw ConfigError("invalid NoiseKind");
}

void NoiseSpec::validate() const {
    if (!(level >= 0.0) || !std::isfinite(level))
        throw ConfigError("NoiseSpec: level must be finite and >= 0");
    if (kind == NoiseKind::salt_pepper) {
        if (level > 1.0)
            throw ConfigError("NoiseSpec: salt_pepper probability must be <= 1");
        if (relative)
            throw ConfigError("NoiseSpec: salt_pepper probability cannot be relative");
        if (!std::isfinite(amplitude))
            throw ConfigError("NoiseSpec: amplitude must be finite");
    }
}

double laplace_sample(double u, double b) {
    if (!(u > 0.0 && u < 1.0))
        throw ContractError("laplace_sample: u must lie in the open interval (0,1)");
    if (!(b > 0.0))
        throw ContractError("laplace_sample: scale b must be positive");
    const double t = u - 0.5;
    const double s = (t > 0.0) ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
    return -b * s * std::log(1.0 - 2.0 * std::abs(t));
}

namespace {

double rms(std::span<const double> v) {
    if (v.empty()) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc / static_cast<double>(v.size()));
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

std::vector<double> apply_noise(std::span<const double> v, const NoiseSpec& spec,
                                std::uint64_t seed) {
    spec.validate();
    std::vector<double> out(v.begin(), v.end());
    if (spec.kind == NoiseKind::none) return out;

    SplitMix64 rng(seed);
    switch (spec.kind) {
        case NoiseKind::gaussian: {
            const double sigma = spec.relative ? spec.level * rms(v) : spec.level;
            if (sigma == 0.0) return out;
            for (double& x : out) x += sigma * rng.next_gaussian();
            break;
        }
        case NoiseKind::laplace: {
            const double b = spec.relative ? spec.level * rms(v) : spec.level;
            if (b == 0.0) return out;
            for (double& x : out) x += laplace_sample(rng.next_open(), b);
            break;
        }
        case NoiseKind::salt_pepper: {
            const double p = spec.level;
            if (p == 0.0) return out;
            const double spike = spec.amplitude * max_abs(v);
            for (double& x : out) {
                const double u = rng.next_double();
                if (u < 0.5 * p)
                    x = spike;
                else if (u < p)
                    x = -spike;
            }
            break;
        }
        case NoiseKind::none: break;
    }
    return out;
}

}  // namespace dcs
