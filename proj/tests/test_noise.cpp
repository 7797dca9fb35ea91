#include <doctest.h>

#include "dcs/noise.hpp"

#include "test_util.hpp"

using namespace dcs;
using namespace testutil;

TEST_SUITE("noise") {

TEST_CASE("none and degenerate specs are exact identities") {
    SplitMix64 rng(3);
    const std::vector<double> v = random_vector(64, rng);

    NoiseSpec none;
    const std::vector<double> same = apply_noise(v, none, 42);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(same[i] == v[i]);

    NoiseSpec g0;
    g0.kind = NoiseKind::gaussian;
    g0.level = 0.0;
    const std::vector<double> same2 = apply_noise(v, g0, 42);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(same2[i] == v[i]);
}

TEST_CASE("gaussian sample moments at length 1e5") {
    NoiseSpec spec;
    spec.kind = NoiseKind::gaussian;
    spec.level = 0.1;
    const std::vector<double> zeros(100000, 0.0);
    const std::vector<double> out = apply_noise(zeros, spec, 7);

    double mean = 0.0;
    for (double x : out) mean += x;
    mean /= static_cast<double>(out.size());
    double var = 0.0;
    for (double x : out) var += (x - mean) * (x - mean);
    var /= static_cast<double>(out.size() - 1);
    const double sd = std::sqrt(var);

    CHECK(mean >= -0.002);
    CHECK(mean <= 0.002);
    CHECK(sd >= 0.098);
    CHECK(sd <= 0.102);
}

TEST_CASE("laplace quantile transform") {
    CHECK(laplace_sample(0.5, 1.0) == 0.0);
    CHECK(laplace_sample(0.75, 1.0) == doctest::Approx(0.6931471805599453).epsilon(1e-12));
    CHECK(laplace_sample(0.25, 2.0) == doctest::Approx(-1.3862943611198906).epsilon(1e-12));
    CHECK_THROWS_AS(laplace_sample(0.0, 1.0), ContractError);
    CHECK_THROWS_AS(laplace_sample(1.0, 1.0), ContractError);
}

TEST_CASE("laplace empirical variance matches 2 b^2") {
    SplitMix64 rng(11);
    const std::size_t n = 1000000;
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = laplace_sample(rng.next_open(), 1.0);
        const double d = x - mean;
        mean += d / static_cast<double>(i);
        m2 += d * (x - mean);
    }
    const double var = m2 / static_cast<double>(n - 1);
    CHECK(var == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("salt and pepper corruption count sits in the binomial band") {
    NoiseSpec spec;
    spec.kind = NoiseKind::salt_pepper;
    spec.level = 0.1;
    spec.amplitude = 1.0;

    SplitMix64 rng(13);
    std::vector<double> v(100000);
    for (double& x : v) x = 0.5 + 0.1 * rng.next_gaussian();  // keep entries away from spikes

    const std::vector<double> out = apply_noise(v, spec, 99);
    double spike = 0.0;
    for (double x : v) spike = std::max(spike, std::abs(x));

    std::size_t corrupted = 0;
    std::size_t salt = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (out[i] != v[i]) {
            ++corrupted;
            CHECK(std::abs(std::abs(out[i]) - spike) <= 1e-15);
            if (out[i] > 0) ++salt;
        }
    CHECK(corrupted >= 9400);
    CHECK(corrupted <= 10600);
    // Salt vs pepper should split around half.
    CHECK(std::abs(static_cast<double>(salt) / corrupted - 0.5) < 0.05);
}

TEST_CASE("relative level scales with the input RMS") {
    NoiseSpec spec;
    spec.kind = NoiseKind::gaussian;
    spec.level = 0.1;
    spec.relative = true;

    std::vector<double> v(50000, 2.0);  // RMS = 2 => effective sigma 0.2
    const std::vector<double> out = apply_noise(v, spec, 5);
    double var = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) var += (out[i] - 2.0) * (out[i] - 2.0);
    var /= static_cast<double>(v.size());
    CHECK(std::sqrt(var) == doctest::Approx(0.2).epsilon(0.03));
}

TEST_CASE("determinism and stream independence") {
    SplitMix64 rng(17);
    const std::vector<double> v = random_vector(100000, rng);
    NoiseSpec spec;
    spec.kind = NoiseKind::laplace;
    spec.level = 0.3;

    const std::vector<double> a = apply_noise(v, spec, 1001);
    const std::vector<double> b = apply_noise(v, spec, 1001);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(a[i] == b[i]);  // bit-identical

    const std::vector<double> c = apply_noise(v, spec, 1002);
    std::vector<double> na(v.size()), nc(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        na[i] = a[i] - v[i];
        nc[i] = c[i] - v[i];
    }
    const double corr = dot(na, nc) / (norm2(na) * norm2(nc));
    CHECK(std::abs(corr) <= 0.02);
}

TEST_CASE("spec validation") {
    NoiseSpec bad;
    bad.kind = NoiseKind::salt_pepper;
    bad.level = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    NoiseSpec neg;
    neg.kind = NoiseKind::gaussian;
    neg.level = -0.1;
    CHECK_THROWS_AS(neg.validate(), ConfigError);

    CHECK_THROWS_AS(noise_kind_from_string("pepper"), ConfigError);
}

}  // TEST_SUITE
