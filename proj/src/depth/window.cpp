#include "corridor/depth/window.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "corridor/core/error.hpp"

namespace corridor::depth {

void WindowSpec::validate() const {
    if (!(uav_width_m > 0.0) || !(uav_height_m > 0.0))
        raise(ErrorCategory::config, "uav dimensions must be positive");
    if (!(d_min_m > 0.0)) raise(ErrorCategory::config, "d_min must be positive");
    if (margin_factor < 1.0) raise(ErrorCategory::config, "margin_factor must be >= 1");
    if (blocked_fraction_threshold < 0.0 || blocked_fraction_threshold > 1.0)
        raise(ErrorCategory::config, "blocked_fraction_threshold must be in [0, 1]");
}

int PixelRect::x0() const { return static_cast<int>(std::lround(center_x - half_width)); }
int PixelRect::x1() const { return static_cast<int>(std::lround(center_x + half_width)); }
int PixelRect::y0() const { return static_cast<int>(std::lround(center_y - half_height)); }
int PixelRect::y1() const { return static_cast<int>(std::lround(center_y + half_height)); }

long PixelRect::pixel_count() const {
    return static_cast<long>(x1() - x0() + 1) * (y1() - y0() + 1);
}

PixelRect make_pixel_rect(double center_x, double center_y, double half_width,
                          double half_height, int image_width, int image_height) {
    PixelRect rect{center_x, center_y, half_width, half_height};
    if (rect.x0() < 0 || rect.y0() < 0 || rect.x1() > image_width - 1 ||
        rect.y1() > image_height - 1)
        raise(ErrorCategory::window,
              "window rect exceeds image bounds (d_min too small for this field of view)");
    return rect;
}

PixelRect project_window(const sim::StereoRig& rig, const WindowSpec& spec) {
    spec.validate();
    const double hw = rig.focal_px * (spec.uav_width_m * spec.margin_factor * 0.5) / spec.d_min_m;
    const double hh = rig.focal_px * (spec.uav_height_m * spec.margin_factor * 0.5) / spec.d_min_m;
    return make_pixel_rect(rig.cx, rig.cy, hw, hh, rig.image_width, rig.image_height);
}

double centroid_depth(const DepthMap& depth, const PixelRect& rect) {
    const int cx = static_cast<int>(std::lround(rect.center_x));
    const int cy = static_cast<int>(std::lround(rect.center_y));
    std::array<float, 9> patch;
    int n = 0;
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
            patch[n++] = depth.values.at_clamped(cx + dx, cy + dy);
    std::nth_element(patch.begin(), patch.begin() + 4, patch.end());
    return patch[4];
}

const char* verdict_name(Verdict v) { return v == Verdict::Free ? "Free" : "Blocked"; }

WindowDecision classify_window(const DepthMap& depth, const PixelRect& rect,
                               double fused_distance_m, const WindowSpec& spec,
                               std::optional<double> lidar_m) {
    if (!(fused_distance_m > 0.0))
        raise(ErrorCategory::contract, "fused distance must be positive");

    long below = 0;
    for (int y = rect.y0(); y <= rect.y1(); ++y)
        for (int x = rect.x0(); x <= rect.x1(); ++x)
            if (depth.values.at(x, y) < spec.d_min_m) ++below;
    const double fraction = static_cast<double>(below) / static_cast<double>(rect.pixel_count());

    WindowDecision decision;
    decision.fused_distance_m = fused_distance_m;
    decision.centroid_depth_m = centroid_depth(depth, rect);
    decision.lidar_m = lidar_m;
    decision.blocked_pixel_fraction = fraction;
    decision.verdict = (fused_distance_m < spec.d_min_m ||
                        fraction > spec.blocked_fraction_threshold)
                           ? Verdict::Blocked
                           : Verdict::Free;
    return decision;
}

GrayImage annotate_decision(const GrayImage& base, const PixelRect& rect, Verdict verdict) {
    GrayImage out = base;
    const std::uint8_t gray = verdict == Verdict::Free ? 255 : 0;
    const int x0 = rect.x0(), x1 = rect.x1(), y0 = rect.y0(), y1 = rect.y1();
    for (int t = 0; t < 2; ++t) {
        for (int x = std::max(x0 - t, 0); x <= std::min(x1 + t, out.width() - 1); ++x) {
            if (y0 - t >= 0) out.at(x, y0 - t) = gray;
            if (y1 + t < out.height()) out.at(x, y1 + t) = gray;
        }
        for (int y = std::max(y0 - t, 0); y <= std::min(y1 + t, out.height() - 1); ++y) {
            if (x0 - t >= 0) out.at(x0 - t, y) = gray;
            if (x1 + t < out.width()) out.at(x1 + t, y) = gray;
        }
    }
    return out;
}

}  // namespace corridor::depth
