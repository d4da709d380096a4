#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "corridor/core/vec3.hpp"

namespace corridor::sim {

/// Checkerboard in surface coordinates; `scale` is the tile edge in meters.
struct CheckerTexture {
    double scale = 0.25;
    std::uint8_t gray0 = 40;
    std::uint8_t gray1 = 220;
};

/// Hash-based value noise in surface coordinates, around mid-gray.
/// gray = clamp(128 + amplitude * n) with n in [-1, 1].
struct NoiseTexture {
    double scale = 0.5;
    double amplitude = 60.0;
};

using Texture = std::variant<CheckerTexture, NoiseTexture>;

struct Sphere {
    Vec3 center;
    double radius = 1.0;
};

/// Axis-aligned box.
struct Box {
    Vec3 min, max;
};

/// Infinite plane dot(normal, p) == offset. The normal is normalized on
/// validation.
struct Plane {
    Vec3 normal{0, 0, -1};
    double offset = 0.0;
};

struct Primitive {
    std::variant<Sphere, Box, Plane> shape;
    Texture texture = CheckerTexture{};
};

struct Scene {
    std::vector<Primitive> primitives;
    std::uint8_t background_gray = 0;
};

/// Throws ErrorCategory::config on non-positive extents or degenerate
/// normals; normalizes plane normals in place.
void validate(Scene& scene);

/// Evaluates the texture at a point on the primitive's surface.
/// Textures are parameterized in local surface coordinates (box face,
/// sphere chart, plane tangent frame) so that a fronto-parallel face
/// carries a stable 2D pattern regardless of FP jitter in the hit depth.
std::uint8_t texture_gray(const Primitive& prim, const Vec3& hit_point);

struct RayHit {
    double distance = 0.0;
    std::uint8_t gray = 0;
};

/// Nearest positive-distance intersection. `direction` must be unit length
/// to within 1e-9 (contract violation otherwise). Returns nullopt on miss.
std::optional<RayHit> ray_cast(const Scene& scene, const Vec3& origin, const Vec3& direction);

}  // namespace corridor::sim
