#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcs/config.hpp"

namespace dcs {

struct CellRecord {
    std::size_t lambda_index = 0;
    std::size_t delta_index = 0;
    double lambda = 0.0;
    double delta = 0.0;
    double mean_snr_db = 0.0;  // NaN when every trial failed
    double std_snr_db = 0.0;   // sample std over successful trials (0 when < 2)
    std::vector<double> trial_snrs;  // per trial index; NaN marks a failed trial
    std::size_t failures = 0;
};

struct SweepBest {
    double lambda_star = 0.0;
    double delta_star = 0.0;
    double mean_snr_db = 0.0;
};

struct SweepProvenance {
    std::string config_hash;
    std::uint64_t base_seed = 0;
    std::string tool_version;
};

struct SweepResult {
    std::string surface_label;
    std::string noise_kind;
    std::vector<CellRecord> cells;  // ordered by (lambda_index, delta_index)
    SweepBest best;
    SweepProvenance provenance;
};

// Seeds derived for one (surface, cell, trial); indices are hashed rather
// than values so editing the grid never silently reuses a stream.
struct TrialSeeds {
    std::uint64_t psi_x = 0;
    std::uint64_t psi_y = 0;
    std::uint64_t noise = 0;
};

TrialSeeds derive_trial_seeds(std::uint64_t base_seed, const std::string& surface_label,
                              std::size_t lambda_index, std::size_t delta_index,
                              std::size_t trial_index, bool fix_sensing);

// Number of measurements per axis for a given ratio: ceil(m_ratio * n),
// clamped to [1, n].
std::size_t measurements_for(double m_ratio, std::size_t n);

// Runs `trials` seeded reconstructions for one (lambda, delta) cell and
// aggregates the surface SNRs. Trials that raise a numerical failure are
// counted and excluded from the mean, never silently scored.
CellRecord run_cell(const SurfaceGrid& surface, const SweepConfig& cfg,
                    std::size_t lambda_index, std::size_t delta_index);

// Evaluates every grid cell (independent, executed on `workers` threads) and
// selects the best cell. The result is a pure function of (surface, cfg):
// identical across runs and across worker counts.
SweepResult run_grid(const SurfaceGrid& surface, const SweepConfig& cfg,
                     std::size_t workers = 1);

// Argmax of mean SNR over non-failed cells; ties broken by smaller lambda,
// then smaller delta. Throws when every cell failed.
std::pair<double, double> select_optimal(const SweepResult& result);

// Deterministic serializations (shortest round-trip numbers throughout).
std::string sweep_results_to_json(const std::vector<SweepResult>& results);
std::string cells_csv(const std::vector<SweepResult>& results);
std::string optimal_csv(const std::vector<SweepResult>& results);
std::string heatmap_dat(const std::vector<SweepResult>& results);

}  // namespace dcs
