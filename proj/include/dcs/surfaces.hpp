#pragma once

#include <string>

#include "dcs/grid.hpp"

namespace dcs {

enum class SurfaceKind { ramp_peak, sphere, peak_valley };

SurfaceKind surface_kind_from_string(const std::string& s);
std::string to_string(SurfaceKind k);

// Deterministic closed-form test surfaces. The exact formulas are frozen (see
// README) so results stay comparable across releases:
//   sphere:      upper hemisphere cap, radius 0.4*min(H,W), centered at
//                grid point (H/2, W/2); zero outside the cap.
//   ramp_peak:   linear ramp 0..1 along x plus one Gaussian bump.
//   peak_valley: a positive and a negative Gaussian bump at mirrored
//                positions, so the heights sum to ~0.
SurfaceGrid gen_surface(SurfaceKind kind, const GridDims& dims);

}  // namespace dcs
