#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcs/config.hpp"
#include "dcs/io.hpp"
#include "dcs/metrics.hpp"
#include "dcs/poisson.hpp"
#include "dcs/rng.hpp"
#include "dcs/sweep.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

struct ManifestWriter {
    fs::path config_path;
    std::string config_hash;
    std::string started_at = iso8601_now();
    std::vector<std::string> outputs;

    void write(const fs::path& out_dir) const {
        ordered_json j;
        j["config_path"] = config_path.string();
        j["config_hash"] = config_hash;
        j["tool_version"] = DCS_VERSION;
        j["started_at"] = started_at;
        j["finished_at"] = iso8601_now();
        j["outputs"] = outputs;
        dcs::atomic_write(out_dir / "manifest.json", j.dump(2) + "\n");
    }
};

struct CommonOpts {
    std::string config;
    std::string out_dir = ".";
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::optional<std::uint64_t> seed_override;
};

int cmd_sweep(const CommonOpts& opts) {
    const std::string config_bytes = dcs::read_file(opts.config);
    dcs::SweepConfig cfg = dcs::parse_sweep_config(config_bytes);
    if (opts.seed_override) cfg.base_seed = *opts.seed_override;

    const fs::path out_dir(opts.out_dir);
    fs::create_directories(out_dir);

    ManifestWriter manifest{opts.config, dcs::hash_bytes_hex(config_bytes)};

    std::vector<dcs::SweepResult> results;
    std::size_t failed_cells = 0;
    std::size_t total_cells = 0;
    for (const dcs::SurfaceSource& src : cfg.surfaces) {
        const dcs::SurfaceGrid surface = src.realize();
        dcs::SweepResult r = dcs::run_grid(surface, cfg, opts.workers);
        for (const dcs::CellRecord& c : r.cells) {
            ++total_cells;
            if (c.failures == c.trial_snrs.size()) ++failed_cells;
        }
        results.push_back(std::move(r));
    }

    auto emit = [&](const char* name, const std::string& content) {
        dcs::atomic_write(out_dir / name, content);
        manifest.outputs.push_back((out_dir / name).string());
    };
    emit("cells.csv", dcs::cells_csv(results));
    emit("optimal.csv", dcs::optimal_csv(results));
    emit("result.json", dcs::sweep_results_to_json(results));
    emit("heatmap.dat", dcs::heatmap_dat(results));
    manifest.write(out_dir);

    if (failed_cells == total_cells) {
        std::cerr << "dcs sweep: every cell failed\n";
        return kExitNumerical;
    }
    for (const dcs::SweepResult& r : results)
        std::cout << r.surface_label << "," << r.noise_kind << ": lambda*="
                  << dcs::format_double(r.best.lambda_star) << " delta*="
                  << dcs::format_double(r.best.delta_star) << " mean_snr="
                  << dcs::format_double(r.best.mean_snr_db) << " dB\n";
    return kExitOk;
}

int cmd_reconstruct(const CommonOpts& opts) {
    const std::string config_bytes = dcs::read_file(opts.config);
    dcs::ReconstructConfig cfg = dcs::parse_reconstruct_config(config_bytes);
    if (opts.seed_override) cfg.seed = *opts.seed_override;

    const fs::path out_dir(opts.out_dir);
    fs::create_directories(out_dir);
    ManifestWriter manifest{opts.config, dcs::hash_bytes_hex(config_bytes)};

    const dcs::SurfaceGrid surface = cfg.surface.realize();
    const std::size_t m = dcs::measurements_for(cfg.m_ratio, surface.dims.n);
    const std::uint64_t psi_x = dcs::mix_seed(cfg.seed, 0xA1);
    const std::uint64_t psi_y = dcs::mix_seed(cfg.seed, 0xA2);
    const std::uint64_t noise_seed = dcs::mix_seed(cfg.seed, 0xA3);

    const dcs::StackedSystem sys =
        dcs::assemble_system(surface, psi_x, psi_y, m, cfg.noise, noise_seed);
    dcs::DcsParams params = cfg.dcs;
    params.lambda = cfg.lambda;
    params.delta = cfg.delta;
    params.record_trace = true;

    const dcs::DcsResult sol = dcs::dcs_solve(sys, params);
    const dcs::GradientField grads = dcs::recover_gradients(sol.coeffs, sys);
    const dcs::Score sc = dcs::score(surface, grads);

    const dcs::SurfaceGrid recon = dcs::align_mean(dcs::integrate(grads), surface);

    auto emit = [&](const char* name, const std::string& content) {
        dcs::atomic_write(out_dir / name, content);
        manifest.outputs.push_back((out_dir / name).string());
    };
    emit("reconstruction.csv", dcs::surface_to_csv(recon));
    {
        dcs::SurfaceGrid gx{grads.dims, grads.zx, "zx"};
        dcs::SurfaceGrid gy{grads.dims, grads.zy, "zy"};
        emit("gradient_x.csv", dcs::surface_to_csv(gx));
        emit("gradient_y.csv", dcs::surface_to_csv(gy));
    }
    {
        ordered_json j;
        j["snr_surface_db"] = sc.snr_surface_db;
        j["snr_gradient_db"] = sc.snr_gradient_db;
        j["rmse"] = sc.rmse;
        j["outer_iterations"] = sol.state.t;
        j["constraint_norm"] = sol.state.constraint_norm;
        j["inner_iterations_total"] = sol.report.iterations;
        j["kkt_residual"] = sol.report.kkt_residual;
        j["converged"] = sol.report.converged;
        emit("score.json", j.dump(2) + "\n");
    }
    {
        std::string trace = "t,constraint_norm,inner_objective,inner_iterations\n";
        for (const dcs::DcsTraceStep& s : sol.trace) {
            trace += std::to_string(s.t) + "," + dcs::format_double(s.constraint_norm) + "," +
                     dcs::format_double(s.inner_objective) + "," +
                     std::to_string(s.inner_iterations) + "\n";
        }
        emit("trace.csv", trace);
    }
    manifest.write(out_dir);

    std::cout << surface.label << ": snr_surface=" << dcs::format_double(sc.snr_surface_db)
              << " dB, snr_gradient=" << dcs::format_double(sc.snr_gradient_db)
              << " dB, rmse=" << dcs::format_double(sc.rmse) << "\n";
    return kExitOk;
}

int cmd_gen_surface(const std::string& kind, std::size_t rows, std::size_t cols,
                    const std::string& out_path) {
    const dcs::SurfaceGrid s =
        dcs::gen_surface(dcs::surface_kind_from_string(kind), dcs::GridDims::make(rows, cols));
    dcs::atomic_write(out_path, dcs::surface_to_csv(s));
    std::cout << "wrote " << out_path << " (" << rows << "x" << cols << ")\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surface reconstruction from compressively sampled gradients"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::uint64_t seed_value = 0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opts.config, "JSON config file");
        if (needs_config) c->required();
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--workers", opts.workers, "worker thread count");
        sub->add_option("--seed", seed_value, "override the config base seed")
            ->each([&](const std::string&) { opts.seed_override = seed_value; });
    };

    auto* sweep = app.add_subcommand("sweep", "grid-search (lambda, delta) per surface");
    add_common(sweep, true);

    auto* reconstruct = app.add_subcommand("reconstruct", "single reconstruction run");
    add_common(reconstruct, true);

    std::string gen_kind = "sphere";
    std::size_t gen_rows = 32, gen_cols = 32;
    std::string gen_out = "surface.csv";
    auto* gen = app.add_subcommand("gen-surface", "write a synthetic surface as CSV");
    gen->add_option("--kind", gen_kind, "ramp_peak | sphere | peak_valley");
    gen->add_option("--rows", gen_rows, "grid rows (power of two)");
    gen->add_option("--cols", gen_cols, "grid cols (power of two)");
    gen->add_option("--out", gen_out, "output CSV path");

    auto* print_cfg = app.add_subcommand("print-default-config", "dump the default sweep config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sweep->parsed()) return cmd_sweep(opts);
        if (reconstruct->parsed()) return cmd_reconstruct(opts);
        if (gen->parsed()) return cmd_gen_surface(gen_kind, gen_rows, gen_cols, gen_out);
        if (print_cfg->parsed()) {
            std::cout << dcs::sweep_config_to_json(dcs::default_sweep_config());
            return kExitOk;
        }
    } catch (const dcs::NumericalError& e) {
        std::cerr << "dcs: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const dcs::Error& e) {
        std::cerr << "dcs: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "dcs: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
