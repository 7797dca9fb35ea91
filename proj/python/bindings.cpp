#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dcs/config.hpp"
#include "dcs/dcs_solver.hpp"
#include "dcs/io.hpp"
#include "dcs/metrics.hpp"
#include "dcs/poisson.hpp"
#include "dcs/rng.hpp"
#include "dcs/solver.hpp"
#include "dcs/sweep.hpp"

namespace py = pybind11;

namespace {

using Array2d = py::array_t<double, py::array::c_style | py::array::forcecast>;
using Array1d = py::array_t<double, py::array::c_style | py::array::forcecast>;

dcs::SurfaceGrid to_surface(const Array2d& arr, const std::string& label) {
    if (arr.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    const auto rows = static_cast<std::size_t>(arr.shape(0));
    const auto cols = static_cast<std::size_t>(arr.shape(1));
    dcs::SurfaceGrid s;
    s.dims = dcs::GridDims::make(rows, cols);
    s.label = label;
    s.z.assign(arr.data(), arr.data() + s.dims.n);
    return s;
}

Array2d to_array(const dcs::GridDims& dims, const std::vector<double>& v) {
    Array2d out({static_cast<py::ssize_t>(dims.rows), static_cast<py::ssize_t>(dims.cols)});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

std::vector<double> to_vector(const Array1d& arr) {
    return std::vector<double>(arr.data(), arr.data() + arr.size());
}

dcs::NoiseSpec make_noise(const std::string& kind, double level, double amplitude,
                          bool relative) {
    dcs::NoiseSpec spec;
    spec.kind = dcs::noise_kind_from_string(kind);
    spec.level = level;
    spec.amplitude = amplitude;
    spec.relative = relative;
    spec.validate();
    return spec;
}

py::dict reconstruct(const Array2d& surface, double lam, double delta, double m_ratio,
                     const std::string& noise_kind, double noise_level, bool noise_relative,
                     double noise_amplitude, std::uint64_t seed, std::size_t outer_iters,
                     double constraint_tol, std::size_t inner_max_iter, double inner_tol) {
    const dcs::SurfaceGrid ref = to_surface(surface, "input");
    const dcs::NoiseSpec noise =
        make_noise(noise_kind, noise_level, noise_amplitude, noise_relative);
    const std::size_t m = dcs::measurements_for(m_ratio, ref.dims.n);

    const dcs::StackedSystem sys = dcs::assemble_system(
        ref, dcs::mix_seed(seed, 0xA1), dcs::mix_seed(seed, 0xA2), m, noise,
        dcs::mix_seed(seed, 0xA3));

    dcs::DcsParams params;
    params.lambda = lam;
    params.delta = delta;
    params.outer_iters = outer_iters;
    params.constraint_tol = constraint_tol;
    params.inner.max_iter = inner_max_iter;
    params.inner.tol = inner_tol;

    const dcs::DcsResult sol = dcs::dcs_solve(sys, params);
    const dcs::GradientField grads = dcs::recover_gradients(sol.coeffs, sys);
    const dcs::Score sc = dcs::score(ref, grads);
    const dcs::SurfaceGrid recon = dcs::align_mean(dcs::integrate(grads), ref);

    py::dict out;
    out["surface"] = to_array(ref.dims, recon.z);
    out["snr_surface_db"] = sc.snr_surface_db;
    out["snr_gradient_db"] = sc.snr_gradient_db;
    out["rmse"] = sc.rmse;
    out["outer_iterations"] = sol.state.t;
    out["constraint_norm"] = sol.state.constraint_norm;
    out["converged"] = sol.report.converged;
    return out;
}

}  // namespace

PYBIND11_MODULE(pydcs, m) {
    m.doc() = "Surface reconstruction from compressively sampled gradient measurements";
    m.attr("__version__") = DCS_VERSION;

    m.def(
        "gen_surface",
        [](const std::string& kind, std::size_t rows, std::size_t cols) {
            const dcs::SurfaceGrid s = dcs::gen_surface(dcs::surface_kind_from_string(kind),
                                                        dcs::GridDims::make(rows, cols));
            return to_array(s.dims, s.z);
        },
        py::arg("kind"), py::arg("rows"), py::arg("cols"),
        "Deterministic synthetic surface: ramp_peak | sphere | peak_valley");

    m.def(
        "haar_forward",
        [](const Array2d& z) {
            const dcs::SurfaceGrid s = to_surface(z, "");
            return to_array(s.dims, dcs::haar_forward(s.z, s.dims));
        },
        py::arg("z"), "Orthonormal 2-D Haar analysis (full depth)");

    m.def(
        "haar_inverse",
        [](const Array2d& c) {
            const dcs::SurfaceGrid s = to_surface(c, "");
            return to_array(s.dims, dcs::haar_inverse(s.z, s.dims));
        },
        py::arg("c"), "Inverse of haar_forward");

    m.def(
        "gradients",
        [](const Array2d& z) {
            const dcs::SurfaceGrid s = to_surface(z, "");
            const dcs::GradientField g = dcs::gradients_of(s);
            return py::make_tuple(to_array(g.dims, g.zx), to_array(g.dims, g.zy));
        },
        py::arg("z"), "Forward-difference gradient field (zx, zy), Neumann edge");

    m.def(
        "integrate",
        [](const Array2d& zx, const Array2d& zy) {
            const dcs::SurfaceGrid sx = to_surface(zx, "");
            const dcs::SurfaceGrid sy = to_surface(zy, "");
            if (!(sx.dims == sy.dims)) throw std::invalid_argument("gradient shapes disagree");
            dcs::GradientField g{sx.dims, sx.z, sy.z};
            const dcs::SurfaceGrid out = dcs::integrate(g);
            return to_array(out.dims, out.z);
        },
        py::arg("zx"), py::arg("zy"),
        "Least-squares Poisson integration of a gradient field (zero-mean result)");

    m.def(
        "snr_db",
        [](const Array1d& reference, const Array1d& estimate) {
            return dcs::snr_db(to_vector(reference), to_vector(estimate));
        },
        py::arg("reference"), py::arg("estimate"),
        "10 log10(signal/error) with mean removal");

    m.def(
        "soft_threshold",
        [](const Array1d& v, double t) {
            std::vector<double> out = dcs::soft_threshold(to_vector(v), t);
            Array1d arr(static_cast<py::ssize_t>(out.size()));
            std::copy(out.begin(), out.end(), arr.mutable_data());
            return arr;
        },
        py::arg("v"), py::arg("t"));

    m.def(
        "apply_noise",
        [](const Array1d& v, const std::string& kind, double level, std::uint64_t seed,
           double amplitude, bool relative) {
            std::vector<double> out =
                dcs::apply_noise(to_vector(v), make_noise(kind, level, amplitude, relative), seed);
            Array1d arr(static_cast<py::ssize_t>(out.size()));
            std::copy(out.begin(), out.end(), arr.mutable_data());
            return arr;
        },
        py::arg("v"), py::arg("kind"), py::arg("level"), py::arg("seed"),
        py::arg("amplitude") = 1.0, py::arg("relative") = false,
        "Seeded measurement noise: gaussian | laplace | salt_pepper | none");

    m.def("reconstruct", &reconstruct, py::arg("surface"), py::arg("lam") = 1e-5,
          py::arg("delta") = 2.0, py::arg("m_ratio") = 0.5, py::arg("noise_kind") = "none",
          py::arg("noise_level") = 0.0, py::arg("noise_relative") = false,
          py::arg("noise_amplitude") = 1.0, py::arg("seed") = 20210801,
          py::arg("outer_iters") = 15, py::arg("constraint_tol") = 1e-4,
          py::arg("inner_max_iter") = 2000, py::arg("inner_tol") = 1e-8,
          "End-to-end reconstruction from compressively sampled gradients; returns a dict");

    m.def(
        "run_sweep",
        [](const std::string& config_json, std::size_t workers) {
            const dcs::SweepConfig cfg = dcs::parse_sweep_config(config_json);
            std::vector<dcs::SweepResult> results;
            for (const dcs::SurfaceSource& src : cfg.surfaces)
                results.push_back(dcs::run_grid(src.realize(), cfg, workers));
            return dcs::sweep_results_to_json(results);
        },
        py::arg("config_json"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "Brute-force (lambda, delta) grid search; returns the result as a JSON string");

    m.def("default_config", []() { return dcs::sweep_config_to_json(dcs::default_sweep_config()); });

    py::register_exception<dcs::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<dcs::ContractError>(m, "ContractError", PyExc_ValueError);
    py::register_exception<dcs::NumericalError>(m, "NumericalError", PyExc_RuntimeError);
}
