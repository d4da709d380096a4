#include "corridor/sim/render.hpp"

#include <cmath>

#include "corridor/core/error.hpp"

namespace corridor::sim {

void validate(const StereoRig& rig) {
    if (!(rig.focal_px > 0.0)) raise(ErrorCategory::config, "focal length must be positive");
    if (!(rig.baseline_m > 0.0)) raise(ErrorCategory::config, "baseline must be positive");
    if (rig.image_width <= 0 || rig.image_height <= 0)
        raise(ErrorCategory::config, "image dimensions must be positive");
    if (rig.cx < 0.0 || rig.cx > rig.image_width || rig.cy < 0.0 || rig.cy > rig.image_height)
        raise(ErrorCategory::config, "principal point must lie inside the image");
}

void validate(const Pose& pose) {
    if (pose.yaw < -std::numbers::pi || pose.yaw > std::numbers::pi)
        raise(ErrorCategory::config, "yaw must be in [-pi, pi]");
}

void validate(const LidarModel& model) {
    if (!(0.0 < model.min_range_m && model.min_range_m < model.max_range_m))
        raise(ErrorCategory::config, "lidar range must satisfy 0 < min < max");
    if (!(model.resolution_m > 0.0)) raise(ErrorCategory::config, "lidar resolution must be positive");
    if (model.noise_variance_m2 < 0.0)
        raise(ErrorCategory::config, "lidar noise variance must be >= 0");
}

StereoFrame render_stereo(const Scene& scene, const StereoRig& rig, const Pose& pose) {
    validate(rig);
    validate(pose);

    const int w = rig.image_width, h = rig.image_height;
    StereoFrame frame{GrayImage(w, h, scene.background_gray),
                      GrayImage(w, h, scene.background_gray),
                      FloatImage(w, h, kNoHitDepth)};

    const Vec3 left_origin = pose.position;
    const Vec3 right_origin = pose.position + rotate_to_world(pose, {rig.baseline_m, 0.0, 0.0});

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            // Ray through the pixel center.
            const Vec3 dir_cam = Vec3{(x + 0.5 - rig.cx) / rig.focal_px,
                                      (y + 0.5 - rig.cy) / rig.focal_px, 1.0}
                                     .normalized();
            const Vec3 dir_world = rotate_to_world(pose, dir_cam);
            if (const auto hit = ray_cast(scene, left_origin, dir_world)) {
                frame.left.at(x, y) = hit->gray;
                frame.truth_depth.at(x, y) = static_cast<float>(hit->distance * dir_cam.z);
            }
            if (const auto hit = ray_cast(scene, right_origin, dir_world)) {
                frame.right.at(x, y) = hit->gray;
            }
        }
    }
    return frame;
}

namespace {

std::optional<double> lidar_ray(const Scene& scene, const StereoRig& rig, const Pose& pose) {
    const Vec3 origin = pose.position + rotate_to_world(pose, rig.lidar_offset_m);
    const Vec3 dir = rotate_to_world(pose, {0.0, 0.0, 1.0});
    const auto hit = ray_cast(scene, origin, dir);
    if (!hit) return std::nullopt;
    return hit->distance;
}

}  // namespace

std::optional<double> lidar_true_distance(const Scene& scene, const StereoRig& rig,
                                          const Pose& pose) {
    return lidar_ray(scene, rig, pose);
}

std::optional<double> lidar_sample(const Scene& scene, const StereoRig& rig, const Pose& pose,
                                   const LidarModel& model, Rng& rng) {
    validate(model);
    const auto truth = lidar_ray(scene, rig, pose);
    // Out-of-range is decided on the true distance; a miss reads as beyond
    // max range.
    if (!truth || *truth < model.min_range_m || *truth > model.max_range_m) return std::nullopt;
    const double noisy = *truth + rng.gaussian(0.0, std::sqrt(model.noise_variance_m2));
    return std::round(noisy / model.resolution_m) * model.resolution_m;
}

}  // namespace corridor::sim
