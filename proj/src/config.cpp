#include "dcs/config.hpp"

#include <cmath>

#include <json.hpp>

#include "dcs/io.hpp"

namespace dcs {

using ordered_json = nlohmann::ordered_json;

SurfaceGrid SurfaceSource::realize() const {
    if (kind) {
        SurfaceGrid s = gen_surface(*kind, GridDims::make(rows, cols));
        if (!label.empty()) s.label = label;
        return s;
    }
    if (path.empty()) throw ConfigError("surface source needs either 'kind' or 'path'");
    SurfaceGrid s = load_surface(path);
    if (!label.empty()) s.label = label;
    return s;
}

void HyperGrid::validate() const {
    if (lambdas.empty()) throw ConfigError("grid.lambdas must be non-empty");
    if (deltas.empty()) throw ConfigError("grid.deltas must be non-empty");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] >= 0.0)) throw ConfigError("grid.lambdas must be >= 0");
        if (i && !(lambdas[i] > lambdas[i - 1]))
            throw ConfigError("grid.lambdas must be strictly increasing");
    }
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0)) throw ConfigError("grid.deltas must be > 0");
        if (i && !(deltas[i] > deltas[i - 1]))
            throw ConfigError("grid.deltas must be strictly increasing");
    }
}

SelectMode select_mode_from_string(const std::string& s) {
    if (s == "average_snr") return SelectMode::average_snr;
    if (s == "per_trial_average") return SelectMode::per_trial_average;
    throw ConfigError("unknown select_mode: '" + s + "'");
}

std::string to_string(SelectMode m) {
    return m == SelectMode::average_snr ? "average_snr" : "per_trial_average";
}

void SweepConfig::validate() const {
    if (surfaces.empty()) throw ConfigError("config field 'surfaces' must list at least one surface");
    grid.validate();
    noise.validate();
    if (trials < 1) throw ConfigError("config field 'trials' must be >= 1");
    if (!(m_ratio > 0.0 && m_ratio <= 1.0))
        throw ConfigError("config field 'm_ratio' must lie in (0, 1]");
    DcsParams probe = dcs;
    probe.lambda = grid.lambdas.front();
    probe.delta = grid.deltas.front();
    probe.validate();
}

void ReconstructConfig::validate() const {
    if (!(lambda >= 0.0)) throw ConfigError("config field 'lambda' must be >= 0");
    if (!(delta > 0.0)) throw ConfigError("config field 'delta' must be > 0");
    noise.validate();
    if (!(m_ratio > 0.0 && m_ratio <= 1.0))
        throw ConfigError("config field 'm_ratio' must lie in (0, 1]");
    DcsParams probe = dcs;
    probe.lambda = lambda;
    probe.delta = delta;
    probe.validate();
}

HyperGrid default_hyper_grid() {
    HyperGrid g;
    g.lambdas = {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0};
    g.deltas = {0.1, 1.0, 2.0, 5.0, 10.0};
    return g;
}

NoiseSpec default_noise(NoiseKind kind) {
    NoiseSpec spec;
    spec.kind = kind;
    switch (kind) {
        case NoiseKind::none:
            break;
        case NoiseKind::gaussian:
            spec.level = 0.05;  // 5% of measurement RMS
            spec.relative = true;
            break;
        case NoiseKind::laplace:
            // Scale chosen so the variance matches the default gaussian's:
            // var(Laplace(b)) = 2 b^2 = sigma^2  =>  b = sigma / sqrt(2).
            spec.level = 0.05 / std::sqrt(2.0);
            spec.relative = true;
            break;
        case NoiseKind::salt_pepper:
            spec.level = 0.05;
            spec.amplitude = 1.0;
            break;
    }
    return spec;
}

SweepConfig default_sweep_config() {
    SweepConfig cfg;
    cfg.surfaces = {
        SurfaceSource{"Ramp-peak", SurfaceKind::ramp_peak, 32, 32, ""},
        SurfaceSource{"Sphere", SurfaceKind::sphere, 32, 32, ""},
        SurfaceSource{"Peak-valley", SurfaceKind::peak_valley, 32, 32, ""},
    };
    cfg.noise = default_noise(NoiseKind::gaussian);
    cfg.grid = default_hyper_grid();
    cfg.trials = 10;
    cfg.m_ratio = 0.5;
    cfg.base_seed = 20210801;
    cfg.dcs.outer_iters = 15;
    cfg.dcs.constraint_tol = 1e-4;
    cfg.dcs.inner.max_iter = 2000;
    cfg.dcs.inner.tol = 1e-8;
    return cfg;
}

ReconstructConfig default_reconstruct_config() {
    ReconstructConfig cfg;
    cfg.surface = SurfaceSource{"sphere", SurfaceKind::sphere, 64, 64, ""};
    cfg.lambda = 1e-5;
    cfg.delta = 2.0;
    cfg.noise = default_noise(NoiseKind::gaussian);
    cfg.seed = 20210801;
    cfg.m_ratio = 0.5;
    cfg.dcs = default_sweep_config().dcs;
    return cfg;
}

namespace {

const ordered_json& require_field(const ordered_json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end())
        throw ConfigError(std::string("config: missing required field '") + name + "'");
    return *it;
}

NoiseSpec parse_noise(const ordered_json& j) {
    NoiseSpec spec;
    spec.kind = noise_kind_from_string(require_field(j, "kind").get<std::string>());
    if (spec.kind == NoiseKind::none) {
        spec.level = 0.0;
    } else {
        spec.level = require_field(j, "level").get<double>();
    }
    spec.amplitude = j.value("amplitude", 1.0);
    spec.relative = j.value("relative", false);
    spec.validate();
    return spec;
}

ordered_json noise_to_json(const NoiseSpec& spec) {
    ordered_json j;
    j["kind"] = to_string(spec.kind);
    j["level"] = spec.level;
    j["amplitude"] = spec.amplitude;
    j["relative"] = spec.relative;
    return j;
}

SurfaceSource parse_surface_source(const ordered_json& j) {
    SurfaceSource src;
    src.label = j.value("label", std::string{});
    if (j.contains("kind")) {
        src.kind = surface_kind_from_string(j.at("kind").get<std::string>());
        src.rows = j.value("rows", static_cast<std::size_t>(32));
        src.cols = j.value("cols", static_cast<std::size_t>(32));
        if (src.label.empty()) src.label = to_string(*src.kind);
    } else if (j.contains("path")) {
        src.path = j.at("path").get<std::string>();
    } else {
        throw ConfigError("config: each surface needs 'kind' or 'path'");
    }
    return src;
}

ordered_json surface_source_to_json(const SurfaceSource& src) {
    ordered_json j;
    j["label"] = src.label;
    if (src.kind) {
        j["kind"] = to_string(*src.kind);
        j["rows"] = src.rows;
        j["cols"] = src.cols;
    } else {
        j["path"] = src.path;
    }
    return j;
}

DcsParams parse_dcs_params(const ordered_json& j, DcsParams base) {
    base.outer_iters = j.value("outer_iters", base.outer_iters);
    base.constraint_tol = j.value("constraint_tol", base.constraint_tol);
    if (j.contains("inner")) {
        const auto& in = j.at("inner");
        base.inner.max_iter = in.value("max_iter", base.inner.max_iter);
        base.inner.tol = in.value("tol", base.inner.tol);
        if (in.contains("step_rule")) {
            const std::string rule = in.at("step_rule").get<std::string>();
            if (rule == "fixed")
                base.inner.step_rule = StepRule::fixed;
            else if (rule == "backtracking")
                base.inner.step_rule = StepRule::backtracking;
            else
                throw ConfigError("config: unknown step_rule '" + rule + "'");
        }
    }
    return base;
}

ordered_json dcs_params_to_json(const DcsParams& p) {
    ordered_json j;
    j["outer_iters"] = p.outer_iters;
    j["constraint_tol"] = p.constraint_tol;
    j["inner"]["max_iter"] = p.inner.max_iter;
    j["inner"]["tol"] = p.inner.tol;
    j["inner"]["step_rule"] = p.inner.step_rule == StepRule::fixed ? "fixed" : "backtracking";
    return j;
}

ordered_json parse_json_or_throw(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config: invalid JSON: ") + e.what());
    }
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& json_text) {
    const ordered_json j = parse_json_or_throw(json_text);
    SweepConfig cfg = default_sweep_config();

    cfg.surfaces.clear();
    const auto& surfaces = require_field(j, "surfaces");
    if (!surfaces.is_array() || surfaces.empty())
        throw ConfigError("config field 'surfaces' must list at least one surface");
    for (const auto& s : surfaces) cfg.surfaces.push_back(parse_surface_source(s));

    if (j.contains("noise")) cfg.noise = parse_noise(j.at("noise"));
    if (j.contains("grid")) {
        cfg.grid.lambdas = j.at("grid").value("lambdas", cfg.grid.lambdas);
        cfg.grid.deltas = j.at("grid").value("deltas", cfg.grid.deltas);
    }
    cfg.trials = j.value("trials", cfg.trials);
    cfg.m_ratio = j.value("m_ratio", cfg.m_ratio);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    if (j.contains("select_mode"))
        cfg.select_mode = select_mode_from_string(j.at("select_mode").get<std::string>());
    cfg.fix_sensing = j.value("fix_sensing", cfg.fix_sensing);
    if (j.contains("dcs")) cfg.dcs = parse_dcs_params(j.at("dcs"), cfg.dcs);

    cfg.validate();
    return cfg;
}

ReconstructConfig parse_reconstruct_config(const std::string& json_text) {
    const ordered_json j = parse_json_or_throw(json_text);
    ReconstructConfig cfg = default_reconstruct_config();

    cfg.surface = parse_surface_source(require_field(j, "surface"));
    cfg.lambda = require_field(j, "lambda").get<double>();
    cfg.delta = require_field(j, "delta").get<double>();
    if (j.contains("noise")) cfg.noise = parse_noise(j.at("noise"));
    cfg.seed = j.value("seed", cfg.seed);
    cfg.m_ratio = j.value("m_ratio", cfg.m_ratio);
    if (j.contains("dcs")) cfg.dcs = parse_dcs_params(j.at("dcs"), cfg.dcs);

    cfg.validate();
    return cfg;
}

std::string sweep_config_to_json(const SweepConfig& cfg) {
    ordered_json j;
    j["surfaces"] = ordered_json::array();
    for (const auto& s : cfg.surfaces) j["surfaces"].push_back(surface_source_to_json(s));
    j["noise"] = noise_to_json(cfg.noise);
    j["grid"]["lambdas"] = cfg.grid.lambdas;
    j["grid"]["deltas"] = cfg.grid.deltas;
    j["trials"] = cfg.trials;
    j["m_ratio"] = cfg.m_ratio;
    j["base_seed"] = cfg.base_seed;
    j["select_mode"] = to_string(cfg.select_mode);
    j["fix_sensing"] = cfg.fix_sensing;
    j["dcs"] = dcs_params_to_json(cfg.dcs);
    return j.dump(2) + "\n";
}

}  // namespace dcs
