#pragma once

#include <limits>
#include <optional>

#include "corridor/core/image.hpp"
#include "corridor/core/rng.hpp"
#include "corridor/sim/rig.hpp"
#include "corridor/sim/scene.hpp"

namespace corridor::sim {

/// Marker stored in truth depth maps for pixels whose ray escapes the scene.
constexpr float kNoHitDepth = std::numeric_limits<float>::infinity();

struct StereoFrame {
    GrayImage left;
    GrayImage right;
    /// Truth depth for the left view: z coordinate of the hit in the left
    /// camera frame (not the Euclidean ray length).
    FloatImage truth_depth;
};

/// Ray-casts both pinhole views. Misses render as the scene background
/// gray with truth depth = kNoHitDepth. Pure and deterministic.
StereoFrame render_stereo(const Scene& scene, const StereoRig& rig, const Pose& pose);

/// One LiDAR shot along the optical axis from the rig's lidar offset.
/// Returns nullopt when the true distance lies outside [min_range,
/// max_range] (a miss counts as beyond max range); otherwise the noisy
/// reading rounded to the nearest multiple of resolution_m.
std::optional<double> lidar_sample(const Scene& scene, const StereoRig& rig,
                                   const Pose& pose, const LidarModel& model, Rng& rng);

/// Noise-free distance along the lidar ray; nullopt on miss. The truth
/// channel for logs.
std::optional<double> lidar_true_distance(const Scene& scene, const StereoRig& rig,
                                          const Pose& pose);

}  // namespace corridor::sim
