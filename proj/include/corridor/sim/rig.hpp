#pragma once

#include <numbers>

#include "corridor/core/vec3.hpp"

namespace corridor::sim {

/// Pinhole stereo rig. Baseline is stored in meters with the focal length
/// in pixels, so depth = focal_px * baseline_m / disparity_px comes out in
/// meters directly. The right camera sits at +baseline along the rig x axis.
struct StereoRig {
    double focal_px = 700.0;
    double baseline_m = 0.12;
    int image_width = 640;
    int image_height = 480;
    double cx = 320.0;
    double cy = 240.0;
    /// 1D-LiDAR emitter position relative to the left optical center, in
    /// the camera frame (x right, y down, z forward).
    Vec3 lidar_offset_m{};
};

void validate(const StereoRig& rig);

/// Camera pose: optical axis is +z at yaw 0; positive yaw turns the axis
/// toward +x (rotation about the vertical image axis).
struct Pose {
    Vec3 position{};
    double yaw = 0.0;  // radians, in [-pi, pi]
};

void validate(const Pose& pose);

/// Camera-frame -> world rotation for the pose.
inline Vec3 rotate_to_world(const Pose& pose, const Vec3& v) {
    const double c = std::cos(pose.yaw), s = std::sin(pose.yaw);
    return {v.x * c + v.z * s, v.y, -v.x * s + v.z * c};
}

struct LidarModel {
    double min_range_m = 0.2;
    double max_range_m = 100.0;
    double resolution_m = 0.01;
    double noise_variance_m2 = 0.0005798584;
};

void validate(const LidarModel& model);

}  // namespace corridor::sim
