#include "dcs/surfaces.hpp"

#include <cmath>

namespace dcs {

SurfaceKind surface_kind_from_string(const std::string& s) {
    if (s == "ramp_peak") return SurfaceKind::ramp_peak;
    if (s == "sphere") return SurfaceKind::sphere;
    if (s == "peak_valley") return SurfaceKind::peak_valley;
    throw ConfigError("unknown surface kind: '" + s + "'");
}

std::string to_string(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::ramp_peak: return "ramp_peak";
        case SurfaceKind::sphere: return "sphere";
        case SurfaceKind::peak_valley: return "peak_valley";
    }
    throw ConfigError("invalid SurfaceKind");
}

namespace {

double gauss_bump(double r, double c, double r0, double c0, double sigma) {
    const double dr = r - r0;
    const double dc = c - c0;
    return std::exp(-(dr * dr + dc * dc) / (2.0 * sigma * sigma));
}

}  // namespace

SurfaceGrid gen_surface(SurfaceKind kind, const GridDims& dims) {
    const GridDims d = GridDims::make(dims.rows, dims.cols);
    const double H = static_cast<double>(d.rows);
    const double W = static_cast<double>(d.cols);
    const double side = std::min(H, W);

    SurfaceGrid s;
    s.dims = d;
    s.z.resize(d.n);
    s.label = to_string(kind);

    switch (kind) {
        case SurfaceKind::sphere: {
            const double radius = 0.4 * side;
            const double cy = H / 2.0;
            const double cx = W / 2.0;
            for (std::size_t r = 0; r < d.rows; ++r)
                for (std::size_t c = 0; c < d.cols; ++c) {
                    const double dy = static_cast<double>(r) - cy;
                    const double dx = static_cast<double>(c) - cx;
                    const double t = radius * radius - dy * dy - dx * dx;
                    s.at(r, c) = t > 0.0 ? std::sqrt(t) : 0.0;
                }
            break;
        }
        case SurfaceKind::ramp_peak: {
            const double sigma = 0.12 * side;
            const double r0 = 0.35 * (H - 1.0);
            const double c0 = 0.60 * (W - 1.0);
            for (std::size_t r = 0; r < d.rows; ++r)
                for (std::size_t c = 0; c < d.cols; ++c) {
                    const double ramp = W > 1.0 ? static_cast<double>(c) / (W - 1.0) : 0.0;
                    s.at(r, c) = ramp + 0.8 * gauss_bump(static_cast<double>(r),
                                                         static_cast<double>(c), r0, c0, sigma);
                }
            break;
        }
        case SurfaceKind::peak_valley: {
            const double sigma = 0.15 * side;
            // Mirrored centers: the negative bump samples are a point
            // reflection of the positive ones, so truncation at the border
            // cancels and the total height sums to ~0.
            const double r1 = 0.35 * (H - 1.0), c1 = 0.35 * (W - 1.0);
            const double r2 = 0.65 * (H - 1.0), c2 = 0.65 * (W - 1.0);
            for (std::size_t r = 0; r < d.rows; ++r)
                for (std::size_t c = 0; c < d.cols; ++c) {
                    const double rr = static_cast<double>(r);
                    const double cc = static_cast<double>(c);
                    s.at(r, c) = gauss_bump(rr, cc, r1, c1, sigma) -
                                 gauss_bump(rr, cc, r2, c2, sigma);
                }
            break;
        }
    }
    return s;
}

}  // namespace dcs
