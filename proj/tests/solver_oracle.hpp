#pragma once

// Exhaustive-support oracles for small L1 least-squares instances. Test-only
// code, independent of the library's solver path: restricted least squares is
// solved by dense elimination and optimality is certified through the
// subgradient conditions directly.

#include <optional>
#include <vector>

#include "test_util.hpp"

namespace testutil {

struct Instance {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<double> a;  // row-major m x n
    std::vector<double> y;
    std::vector<std::size_t> true_support;
};

inline Instance random_sparse_instance(std::size_t m, std::size_t n, std::size_t sparsity,
                                       dcs::SplitMix64& rng) {
    Instance inst;
    inst.m = m;
    inst.n = n;
    inst.a.resize(m * n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (double& v : inst.a) v = rng.next_gaussian() * scale;

    std::vector<double> c(n, 0.0);
    while (inst.true_support.size() < sparsity) {
        const std::size_t idx = rng.next_u64() % n;
        bool seen = false;
        for (std::size_t s : inst.true_support) seen |= (s == idx);
        if (seen) continue;
        inst.true_support.push_back(idx);
        const double mag = 1.0 + std::abs(rng.next_gaussian());
        c[idx] = rng.next_double() < 0.5 ? mag : -mag;
    }
    inst.y.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) inst.y[i] += inst.a[i * n + j] * c[j];
    return inst;
}

inline double objective_of(const Instance& inst, std::span<const double> c, double lambda) {
    double fit = 0.0;
    for (std::size_t i = 0; i < inst.m; ++i) {
        double r = -inst.y[i];
        for (std::size_t j = 0; j < inst.n; ++j) r += inst.a[i * inst.n + j] * c[j];
        fit += r * r;
    }
    double l1 = 0.0;
    for (double x : c) l1 += std::abs(x);
    return 0.5 * fit + lambda * l1;
}

// Restricted least squares on a support, followed by plain proximal steps to
// polish; returns the polished candidate's objective.
inline double polished_candidate_objective(const Instance& inst,
                                           const std::vector<std::size_t>& support,
                                           double lambda) {
    const std::size_t k = support.size();
    std::vector<double> c(inst.n, 0.0);
    if (k > 0) {
        std::vector<double> ata(k * k, 0.0), aty(k, 0.0);
        for (std::size_t p = 0; p < k; ++p) {
            for (std::size_t q = 0; q < k; ++q) {
                double acc = 0.0;
                for (std::size_t i = 0; i < inst.m; ++i)
                    acc += inst.a[i * inst.n + support[p]] * inst.a[i * inst.n + support[q]];
                ata[p * k + q] = acc;
            }
            double acc = 0.0;
            for (std::size_t i = 0; i < inst.m; ++i)
                acc += inst.a[i * inst.n + support[p]] * inst.y[i];
            aty[p] = acc;
        }
        const std::vector<double> cs = dense_solve(ata, aty, k);
        for (std::size_t p = 0; p < k; ++p) c[support[p]] = cs[p];
    }

    // Polish with ISTA steps; the squared Frobenius norm bounds the spectral
    // norm squared, so the step is always valid.
    double frob2 = 0.0;
    for (double v : inst.a) frob2 += v * v;
    const double lip = std::max(frob2, 1e-12);
    for (int it = 0; it < 200; ++it) {
        std::vector<double> r(inst.m, 0.0);
        for (std::size_t i = 0; i < inst.m; ++i) {
            double acc = -inst.y[i];
            for (std::size_t j = 0; j < inst.n; ++j) acc += inst.a[i * inst.n + j] * c[j];
            r[i] = acc;
        }
        for (std::size_t j = 0; j < inst.n; ++j) {
            double g = 0.0;
            for (std::size_t i = 0; i < inst.m; ++i) g += inst.a[i * inst.n + j] * r[i];
            const double v = c[j] - g / lip;
            const double shr = std::abs(v) - lambda / lip;
            c[j] = shr > 0.0 ? std::copysign(shr, v) : 0.0;
        }
    }
    return objective_of(inst, c, lambda);
}

// Best polished candidate over all supports of size <= 2: an upper bound on
// the global optimum that a converged solver must match or beat.
inline double oracle_objective(const Instance& inst, double lambda) {
    double best = polished_candidate_objective(inst, {}, lambda);
    for (std::size_t i = 0; i < inst.n; ++i)
        best = std::min(best, polished_candidate_objective(inst, {i}, lambda));
    for (std::size_t i = 0; i < inst.n; ++i)
        for (std::size_t j = i + 1; j < inst.n; ++j)
            best = std::min(best, polished_candidate_objective(inst, {i, j}, lambda));
    return best;
}

// Certified global minimizer via support + sign enumeration; accepts only
// candidates passing the full subgradient conditions. Empty when the optimum
// has support larger than 2.
inline std::optional<std::vector<double>> certified_minimizer(const Instance& inst,
                                                              double lambda) {
    const double slack = 1e-9;

    auto check_full_kkt = [&](const std::vector<double>& c) {
        std::vector<double> r(inst.m, 0.0);
        for (std::size_t i = 0; i < inst.m; ++i) {
            double acc = -inst.y[i];
            for (std::size_t j = 0; j < inst.n; ++j) acc += inst.a[i * inst.n + j] * c[j];
            r[i] = acc;
        }
        for (std::size_t j = 0; j < inst.n; ++j) {
            double g = 0.0;
            for (std::size_t i = 0; i < inst.m; ++i) g += inst.a[i * inst.n + j] * r[i];
            if (c[j] != 0.0) {
                if (std::abs(g + lambda * (c[j] > 0 ? 1.0 : -1.0)) > slack) return false;
            } else if (std::abs(g) > lambda + slack) {
                return false;
            }
        }
        return true;
    };

    {
        std::vector<double> zero(inst.n, 0.0);
        if (check_full_kkt(zero)) return zero;
    }

    auto try_support = [&](const std::vector<std::size_t>& support)
        -> std::optional<std::vector<double>> {
        const std::size_t k = support.size();
        std::vector<double> ata(k * k, 0.0), aty(k, 0.0);
        for (std::size_t p = 0; p < k; ++p) {
            for (std::size_t q = 0; q < k; ++q) {
                double acc = 0.0;
                for (std::size_t i = 0; i < inst.m; ++i)
                    acc += inst.a[i * inst.n + support[p]] * inst.a[i * inst.n + support[q]];
                ata[p * k + q] = acc;
            }
            double acc = 0.0;
            for (std::size_t i = 0; i < inst.m; ++i)
                acc += inst.a[i * inst.n + support[p]] * inst.y[i];
            aty[p] = acc;
        }
        const std::size_t patterns = std::size_t{1} << k;
        for (std::size_t bits = 0; bits < patterns; ++bits) {
            std::vector<double> rhs = aty;
            for (std::size_t p = 0; p < k; ++p)
                rhs[p] -= lambda * ((bits >> p) & 1 ? -1.0 : 1.0);
            const std::vector<double> cs = dense_solve(ata, rhs, k);
            bool signs_ok = true;
            for (std::size_t p = 0; p < k; ++p) {
                const double want = (bits >> p) & 1 ? -1.0 : 1.0;
                if (!(cs[p] * want > 0.0)) signs_ok = false;
            }
            if (!signs_ok) continue;
            std::vector<double> c(inst.n, 0.0);
            for (std::size_t p = 0; p < k; ++p) c[support[p]] = cs[p];
            if (check_full_kkt(c)) return c;
        }
        return std::nullopt;
    };

    for (std::size_t i = 0; i < inst.n; ++i)
        if (auto c = try_support({i})) return c;
    for (std::size_t i = 0; i < inst.n; ++i)
        for (std::size_t j = i + 1; j < inst.n; ++j)
            if (auto c = try_support({i, j})) return c;
    return std::nullopt;
}

inline std::vector<std::size_t> support_of(std::span<const double> c, double threshold) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (std::abs(c[i]) > threshold) s.push_back(i);
    return s;
}

}  // namespace testutil
