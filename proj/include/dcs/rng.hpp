#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace dcs {

// SplitMix64 (Steele, Lea & Flood 2014). Chosen because the whole state fits
// in one u64, splitting/deriving child streams is a pure integer operation,
// and the output sequence is bit-identical on every platform. All randomness
// in this library (sensing matrices, noise, test vectors) comes from here so
// that a config's base_seed fully determines every result.
//
// Floating-point derived quantities (gaussian / laplace draws) additionally
// depend on libm's log(); the integer stream itself is fully portable.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in the open interval (0, 1); required by inverse-CDF sampling.
    double next_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via the Marsaglia polar method; the spare value is
    // cached so draws consume the underlying stream deterministically.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double mult = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * mult;
        has_spare_ = true;
        return u * mult;
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

namespace detail {
inline std::uint64_t splitmix_finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// Stable 64-bit combiner for seed derivation. Folding indices (not values)
// keeps streams disjoint when grids are edited.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t word) {
    return detail::splitmix_finalize(seed ^ (word + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

// FNV-1a, used to fold text labels into seed derivations.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace dcs
