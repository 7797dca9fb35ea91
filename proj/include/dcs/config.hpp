#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcs/dcs_solver.hpp"
#include "dcs/noise.hpp"
#include "dcs/surfaces.hpp"

namespace dcs {

// A surface either generated from a named formula or loaded from a file.
struct SurfaceSource {
    std::string label;
    std::optional<SurfaceKind> kind;  // generated when set
    std::size_t rows = 32;
    std::size_t cols = 32;
    std::string path;  // loaded when kind is not set

    SurfaceGrid realize() const;
};

struct HyperGrid {
    std::vector<double> lambdas;
    std::vector<double> deltas;

    void validate() const;  // non-empty, strictly increasing
};

// How the optimal (lambda, delta) is selected from the grid:
//   average_snr:       average SNR per cell over trials, then argmax (default).
//   per_trial_average: argmax per trial, then average the per-trial optima
//                      (can land between grid points).
enum class SelectMode { average_snr, per_trial_average };

SelectMode select_mode_from_string(const std::string& s);
std::string to_string(SelectMode m);

struct SweepConfig {
    std::vector<SurfaceSource> surfaces;
    NoiseSpec noise;
    HyperGrid grid;
    std::size_t trials = 10;
    double m_ratio = 0.5;
    std::uint64_t base_seed = 20210801;
    DcsParams dcs;  // lambda/delta are overwritten per grid cell
    SelectMode select_mode = SelectMode::average_snr;
    bool fix_sensing = false;  // re-draw sensing matrices per trial when false

    void validate() const;
};

struct ReconstructConfig {
    SurfaceSource surface;
    double lambda = 1e-5;
    double delta = 2.0;
    NoiseSpec noise;
    std::uint64_t seed = 20210801;
    double m_ratio = 0.5;
    DcsParams dcs;

    void validate() const;
};

// The default search grid: delta in {0.1, 1, 2, 5, 10} and lambda in
// {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1, 10}.
HyperGrid default_hyper_grid();

// Shipped defaults: the three synthetic surfaces at 32x32, 5%-of-RMS
// gaussian noise, ten trials, half-rate sampling.
SweepConfig default_sweep_config();
ReconstructConfig default_reconstruct_config();

SweepConfig parse_sweep_config(const std::string& json_text);
ReconstructConfig parse_reconstruct_config(const std::string& json_text);
std::string sweep_config_to_json(const SweepConfig& cfg);

NoiseSpec default_noise(NoiseKind kind);

}  // namespace dcs
