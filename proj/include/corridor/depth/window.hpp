#pragma once

#include <optional>
#include <string>

#include "corridor/depth/depth_map.hpp"
#include "corridor/sim/rig.hpp"

namespace corridor::depth {

/// Navigation window: the UAV cross-section projected to the decision
/// distance d_min.
struct WindowSpec {
    double uav_width_m = 1.2;
    double uav_height_m = 0.4;
    double d_min_m = 4.0;
    double margin_factor = 1.0;                // >= 1 widens the window
    double blocked_fraction_threshold = 0.01;  // tau

    void validate() const;
};

/// Axis-aligned pixel rectangle, guaranteed inside the image bounds.
struct PixelRect {
    double center_x = 0.0, center_y = 0.0;
    double half_width = 0.0, half_height = 0.0;

    int x0() const;
    int x1() const;  // inclusive
    int y0() const;
    int y1() const;  // inclusive
    long pixel_count() const;
};

/// Validating constructor; throws ErrorCategory::window if the rect pokes
/// outside [0, w-1] x [0, h-1].
PixelRect make_pixel_rect(double center_x, double center_y, double half_width,
                          double half_height, int image_width, int image_height);

/// Projects the (margin-scaled) UAV cross-section to d_min, centered at the
/// principal point: half_width = f * (uav_width * margin / 2) / d_min.
PixelRect project_window(const sim::StereoRig& rig, const WindowSpec& spec);

/// Median of the 3x3 patch at the rect center (patch clamped to the image).
double centroid_depth(const DepthMap& depth, const PixelRect& rect);

enum class Verdict { Free, Blocked };

const char* verdict_name(Verdict v);

struct WindowDecision {
    Verdict verdict = Verdict::Free;
    double fused_distance_m = 0.0;    // d_K
    double centroid_depth_m = 0.0;    // D_c
    std::optional<double> lidar_m;    // d_L, when a reading was in range
    double blocked_pixel_fraction = 0.0;
};

/// Blocked iff d_K < d_min or the fraction of rect pixels with depth <
/// d_min exceeds the threshold.
WindowDecision classify_window(const DepthMap& depth, const PixelRect& rect,
                               double fused_distance_m, const WindowSpec& spec,
                               std::optional<double> lidar_m = std::nullopt);

/// Copy of `base` with the rect outlined 2 px thick: gray 255 for Free,
/// gray 0 for Blocked.
GrayImage annotate_decision(const GrayImage& base, const PixelRect& rect, Verdict verdict);

}  // namespace corridor::depth
