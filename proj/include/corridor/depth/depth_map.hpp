#pragma once

#include <string>

#include "corridor/core/image.hpp"
#include "corridor/sim/rig.hpp"
#include "corridor/stereo/sgbm.hpp"

namespace corridor::depth {

/// Disparities below this are clamped before conversion so far pixels
/// saturate instead of producing infinities.
constexpr double kDisparityFloorPx = 0.1;

/// depth [m] = focal_px * baseline_m / disparity_px.
/// Throws ErrorCategory::contract for d <= 0 (callers relying on the clamp
/// go through depth_map()).
double depth_from_disparity(double disparity_px, double focal_px, double baseline_m);

/// Inverse conversion; exact round-trip within 1e-12 relative.
double disparity_from_depth(double depth_m, double focal_px, double baseline_m);

struct DepthMap {
    FloatImage values;       // m, finite and > 0
    std::string provenance;  // which disparity map produced it
};

/// Per-pixel conversion of a fully valid (post-WLS) disparity map.
DepthMap depth_map(const stereo::DisparityMap& disparity, const sim::StereoRig& rig,
                   std::string provenance = {});

}  // namespace corridor::depth
