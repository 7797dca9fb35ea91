#include "dcs/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <json.hpp>

#include "dcs/io.hpp"
#include "dcs/metrics.hpp"
#include "dcs/rng.hpp"

namespace dcs {

using ordered_json = nlohmann::ordered_json;

TrialSeeds derive_trial_seeds(std::uint64_t base_seed, const std::string& surface_label,
                              std::size_t lambda_index, std::size_t delta_index,
                              std::size_t trial_index, bool fix_sensing) {
    const std::uint64_t surface_key = mix_seed(base_seed, fnv1a64(surface_label));
    std::uint64_t cell_key = mix_seed(surface_key, lambda_index);
    cell_key = mix_seed(cell_key, delta_index);
    const std::uint64_t trial_key = mix_seed(cell_key, trial_index);

    TrialSeeds seeds;
    if (fix_sensing) {
        // Sensing matrices shared by every cell and trial of this surface.
        seeds.psi_x = mix_seed(surface_key, 0xA1);
        seeds.psi_y = mix_seed(surface_key, 0xA2);
    } else {
        seeds.psi_x = mix_seed(trial_key, 0xA1);
        seeds.psi_y = mix_seed(trial_key, 0xA2);
    }
    seeds.noise = mix_seed(trial_key, 0xA3);
    return seeds;
}

std::size_t measurements_for(double m_ratio, std::size_t n) {
    if (!(m_ratio > 0.0 && m_ratio <= 1.0))
        throw ConfigError("m_ratio must lie in (0, 1]");
    const auto m = static_cast<std::size_t>(
        std::ceil(m_ratio * static_cast<double>(n)));
    return std::min(std::max<std::size_t>(m, 1), n);
}

CellRecord run_cell(const SurfaceGrid& surface, const SweepConfig& cfg,
                    std::size_t lambda_index, std::size_t delta_index) {
    if (lambda_index >= cfg.grid.lambdas.size() || delta_index >= cfg.grid.deltas.size())
        throw ContractError("run_cell: grid index out of range");

    CellRecord rec;
    rec.lambda_index = lambda_index;
    rec.delta_index = delta_index;
    rec.lambda = cfg.grid.lambdas[lambda_index];
    rec.delta = cfg.grid.deltas[delta_index];
    rec.trial_snrs.assign(cfg.trials, std::numeric_limits<double>::quiet_NaN());

    const std::size_t m = measurements_for(cfg.m_ratio, surface.dims.n);

    DcsParams params = cfg.dcs;
    params.lambda = rec.lambda;
    params.delta = rec.delta;

    for (std::size_t k = 0; k < cfg.trials; ++k) {
        const TrialSeeds seeds = derive_trial_seeds(cfg.base_seed, surface.label, lambda_index,
                                                    delta_index, k, cfg.fix_sensing);
        try {
            const StackedSystem sys =
                assemble_system(surface, seeds.psi_x, seeds.psi_y, m, cfg.noise, seeds.noise);
            const DcsResult sol = dcs_solve(sys, params);
            const GradientField g = recover_gradients(sol.coeffs, sys);
            rec.trial_snrs[k] = score(surface, g).snr_surface_db;
        } catch (const NumericalError&) {
            ++rec.failures;
        }
    }

    // Mean/std over successful trials, accumulated in trial order so the
    // result does not depend on scheduling.
    std::size_t ok = 0;
    double sum = 0.0;
    for (double s : rec.trial_snrs)
        if (!std::isnan(s)) {
            sum += s;
            ++ok;
        }
    if (ok == 0) {
        rec.mean_snr_db = std::numeric_limits<double>::quiet_NaN();
        rec.std_snr_db = std::numeric_limits<double>::quiet_NaN();
        return rec;
    }
    rec.mean_snr_db = sum / static_cast<double>(ok);
    double ss = 0.0;
    for (double s : rec.trial_snrs)
        if (!std::isnan(s)) {
            const double d = s - rec.mean_snr_db;
            ss += d * d;
        }
    rec.std_snr_db = ok > 1 ? std::sqrt(ss / static_cast<double>(ok - 1)) : 0.0;
    return rec;
}

namespace {

bool cell_usable(const CellRecord& c) { return !std::isnan(c.mean_snr_db); }

SweepBest best_per_trial_average(const SweepResult& result, std::size_t trials) {
    // Per trial: pick the argmax cell of that trial, then average the picked
    // (lambda, delta) and SNR values across trials.
    double lam_sum = 0.0, del_sum = 0.0, snr_sum = 0.0;
    std::size_t counted = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        const CellRecord* best = nullptr;
        for (const CellRecord& c : result.cells) {
            if (k >= c.trial_snrs.size() || std::isnan(c.trial_snrs[k])) continue;
            if (!best || c.trial_snrs[k] > best->trial_snrs[k]) best = &c;
        }
        if (!best) continue;
        lam_sum += best->lambda;
        del_sum += best->delta;
        snr_sum += best->trial_snrs[k];
        ++counted;
    }
    if (counted == 0) throw Error("sweep: every cell failed in every trial");
    const double inv = 1.0 / static_cast<double>(counted);
    return SweepBest{lam_sum * inv, del_sum * inv, snr_sum * inv};
}

}  // namespace

std::pair<double, double> select_optimal(const SweepResult& result) {
    const CellRecord* best = nullptr;
    for (const CellRecord& c : result.cells) {
        if (!cell_usable(c)) continue;
        if (!best) {
            best = &c;
            continue;
        }
        if (c.mean_snr_db > best->mean_snr_db)
            best = &c;
        else if (c.mean_snr_db == best->mean_snr_db) {
            // Tie: prefer smaller lambda, then smaller delta.
            if (c.lambda_index < best->lambda_index ||
                (c.lambda_index == best->lambda_index && c.delta_index < best->delta_index))
                best = &c;
        }
    }
    if (!best) throw Error("select_optimal: every cell failed");
    return {best->lambda, best->delta};
}

SweepResult run_grid(const SurfaceGrid& surface, const SweepConfig& cfg, std::size_t workers) {
    cfg.validate();
    const std::size_t n_lambda = cfg.grid.lambdas.size();
    const std::size_t n_delta = cfg.grid.deltas.size();
    const std::size_t n_cells = n_lambda * n_delta;

    SweepResult result;
    result.surface_label = surface.label;
    result.noise_kind = to_string(cfg.noise.kind);
    result.cells.resize(n_cells);

    // Cells are independent; a shared counter hands them out and each worker
    // writes only its own slot, so the assembled result is order-free.
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= n_cells) return;
            const std::size_t li = idx / n_delta;
            const std::size_t di = idx % n_delta;
            result.cells[idx] = run_cell(surface, cfg, li, di);
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    if (cfg.select_mode == SelectMode::per_trial_average) {
        result.best = best_per_trial_average(result, cfg.trials);
    } else {
        const auto [lam, del] = select_optimal(result);
        for (const CellRecord& c : result.cells)
            if (c.lambda == lam && c.delta == del) {
                result.best = SweepBest{lam, del, c.mean_snr_db};
                break;
            }
    }

    result.provenance.base_seed = cfg.base_seed;
    result.provenance.config_hash = hash_bytes_hex(sweep_config_to_json(cfg));
    result.provenance.tool_version = DCS_VERSION;
    return result;
}

namespace {

ordered_json json_number(double v) {
    // JSON has no NaN/inf; serialize them as null (nlohmann would emit the
    // literal token otherwise).
    if (std::isnan(v) || std::isinf(v)) return nullptr;
    return v;
}

}  // namespace

std::string sweep_results_to_json(const std::vector<SweepResult>& results) {
    ordered_json out = ordered_json::array();
    for (const SweepResult& r : results) {
        ordered_json jr;
        jr["surface"] = r.surface_label;
        jr["noise"] = r.noise_kind;
        jr["cells"] = ordered_json::array();
        for (const CellRecord& c : r.cells) {
            ordered_json jc;
            jc["lambda"] = c.lambda;
            jc["delta"] = c.delta;
            jc["mean_snr_db"] = json_number(c.mean_snr_db);
            jc["std_snr_db"] = json_number(c.std_snr_db);
            jc["trial_snrs"] = ordered_json::array();
            for (double s : c.trial_snrs) jc["trial_snrs"].push_back(json_number(s));
            jc["failures"] = c.failures;
            jr["cells"].push_back(std::move(jc));
        }
        jr["best"]["lambda_star"] = r.best.lambda_star;
        jr["best"]["delta_star"] = r.best.delta_star;
        jr["best"]["mean_snr_db"] = json_number(r.best.mean_snr_db);
        jr["provenance"]["config_hash"] = r.provenance.config_hash;
        jr["provenance"]["base_seed"] = r.provenance.base_seed;
        jr["provenance"]["tool_version"] = r.provenance.tool_version;
        out.push_back(std::move(jr));
    }
    return out.dump(2) + "\n";
}

std::string cells_csv(const std::vector<SweepResult>& results) {
    std::string out = "surface,noise,lambda,delta,mean_snr_db,std_snr_db,trials,failures\n";
    for (const SweepResult& r : results)
        for (const CellRecord& c : r.cells) {
            out += r.surface_label;
            out += ',';
            out += r.noise_kind;
            out += ',';
            out += format_double(c.lambda);
            out += ',';
            out += format_double(c.delta);
            out += ',';
            out += format_double(c.mean_snr_db);
            out += ',';
            out += format_double(c.std_snr_db);
            out += ',';
            out += std::to_string(c.trial_snrs.size());
            out += ',';
            out += std::to_string(c.failures);
            out += '\n';
        }
    return out;
}

std::string optimal_csv(const std::vector<SweepResult>& results) {
    std::string out = "surface,noise,lambda_star,delta_star,mean_snr_db\n";
    for (const SweepResult& r : results) {
        out += r.surface_label;
        out += ',';
        out += r.noise_kind;
        out += ',';
        out += format_double(r.best.lambda_star);
        out += ',';
        out += format_double(r.best.delta_star);
        out += ',';
        out += format_double(r.best.mean_snr_db);
        out += '\n';
    }
    return out;
}

std::string heatmap_dat(const std::vector<SweepResult>& results) {
    std::string out;
    bool first = true;
    for (const SweepResult& r : results) {
        if (!first) out += '\n';  // blank line separates surface blocks
        first = false;
        out += "# surface: " + r.surface_label + " noise: " + r.noise_kind + "\n";
        out += "# lambda delta mean_snr_db\n";
        for (const CellRecord& c : r.cells) {
            out += format_double(c.lambda);
            out += ' ';
            out += format_double(c.delta);
            out += ' ';
            out += format_double(c.mean_snr_db);
            out += '\n';
        }
    }
    return out;
}

}  // namespace dcs
