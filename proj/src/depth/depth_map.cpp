#include "corridor/depth/depth_map.hpp"

#include "corridor/core/error.hpp"
#include "corridor/simd/dispatch.hpp"

namespace corridor::depth {

double depth_from_disparity(double disparity_px, double focal_px, double baseline_m) {
    if (!(focal_px > 0.0) || !(baseline_m > 0.0))
        raise(ErrorCategory::contract, "focal length and baseline must be positive");
    if (!(disparity_px > 0.0))
        raise(ErrorCategory::contract, "disparity must be positive (degenerate disparity)");
    return focal_px * baseline_m / disparity_px;
}

double disparity_from_depth(double depth_m, double focal_px, double baseline_m) {
    if (!(focal_px > 0.0) || !(baseline_m > 0.0))
        raise(ErrorCategory::contract, "focal length and baseline must be positive");
    if (!(depth_m > 0.0)) raise(ErrorCategory::contract, "depth must be positive");
    return focal_px * baseline_m / depth_m;
}

DepthMap depth_map(const stereo::DisparityMap& disparity, const sim::StereoRig& rig,
                   std::string provenance) {
    if (!disparity.fully_valid())
        raise(ErrorCategory::contract, "depth_map expects a fully valid disparity map");
    const int w = disparity.width(), h = disparity.height();
    DepthMap out{FloatImage(w, h, 0.0f), std::move(provenance)};
    const auto fb = static_cast<float>(rig.focal_px * rig.baseline_m);
    const auto& k = simd::kernels();
    for (int y = 0; y < h; ++y)
        k.disp_to_depth_f32(disparity.values.row(y), w, fb,
                            static_cast<float>(kDisparityFloorPx), out.values.row(y));
    return out;
}

}  // namespace corridor::depth
