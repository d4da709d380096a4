#include "corridor/sim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corridor/core/error.hpp"

namespace corridor::sim {

namespace {

constexpr double kMinHitDistance = 1e-9;

// --- value noise -----------------------------------------------------------

std::uint64_t mix64(std::uint64_t v) {
    v ^= v >> 30;
    v *= 0xbf58476d1ce4e5b9ULL;
    v ^= v >> 27;
    v *= 0x94d049bb133111ebULL;
    v ^= v >> 31;
    return v;
}

double lattice01(std::int64_t ix, std::int64_t iy) {
    const std::uint64_t h = mix64(static_cast<std::uint64_t>(ix) * 0x9e3779b97f4a7c15ULL ^
                                  static_cast<std::uint64_t>(iy) + 0x632be59bd9b4e019ULL);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

// Bilinear value noise in [-1, 1].
double value_noise(double u, double v) {
    const double fu = std::floor(u), fv = std::floor(v);
    const auto iu = static_cast<std::int64_t>(fu);
    const auto iv = static_cast<std::int64_t>(fv);
    const double tu = smoothstep(u - fu), tv = smoothstep(v - fv);
    const double n00 = lattice01(iu, iv), n10 = lattice01(iu + 1, iv);
    const double n01 = lattice01(iu, iv + 1), n11 = lattice01(iu + 1, iv + 1);
    const double a = n00 + (n10 - n00) * tu;
    const double b = n01 + (n11 - n01) * tu;
    return 2.0 * (a + (b - a) * tv) - 1.0;
}

std::uint8_t shade(const Texture& tex, double u, double v) {
    if (const auto* checker = std::get_if<CheckerTexture>(&tex)) {
        const auto cu = static_cast<std::int64_t>(std::floor(u / checker->scale));
        const auto cv = static_cast<std::int64_t>(std::floor(v / checker->scale));
        return ((cu + cv) & 1) == 0 ? checker->gray0 : checker->gray1;
    }
    const auto& noise = std::get<NoiseTexture>(tex);
    const double n = value_noise(u / noise.scale, v / noise.scale);
    const double g = std::round(128.0 + noise.amplitude * n);
    return static_cast<std::uint8_t>(std::clamp(g, 0.0, 255.0));
}

// Surface parameterization: (u, v) in meters along the surface.
void surface_uv(const Sphere& s, const Vec3& p, double& u, double& v) {
    const Vec3 d = (p - s.center) / s.radius;
    u = std::atan2(d.z, d.x) * s.radius;
    v = std::acos(std::clamp(d.y, -1.0, 1.0)) * s.radius;
}

void surface_uv(const Box& b, const Vec3& p, double& u, double& v) {
    // Pick the face whose plane is closest to the hit point.
    const double dx = std::min(std::abs(p.x - b.min.x), std::abs(p.x - b.max.x));
    const double dy = std::min(std::abs(p.y - b.min.y), std::abs(p.y - b.max.y));
    const double dz = std::min(std::abs(p.z - b.min.z), std::abs(p.z - b.max.z));
    if (dx <= dy && dx <= dz) {
        u = p.y;
        v = p.z;
    } else if (dy <= dz) {
        u = p.x;
        v = p.z;
    } else {
        u = p.x;
        v = p.y;
    }
}

void surface_uv(const Plane& pl, const Vec3& p, double& u, double& v) {
    // Deterministic tangent frame: pick the world axis least aligned with n.
    const Vec3 n = pl.normal;
    const Vec3 ref = std::abs(n.x) <= std::abs(n.y) && std::abs(n.x) <= std::abs(n.z)
                         ? Vec3{1, 0, 0}
                         : (std::abs(n.y) <= std::abs(n.z) ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    const Vec3 t1 = cross(n, ref).normalized();
    const Vec3 t2 = cross(n, t1);
    u = p.dot(t1);
    v = p.dot(t2);
}

// --- intersections ---------------------------------------------------------

std::optional<double> intersect(const Sphere& s, const Vec3& o, const Vec3& d) {
    const Vec3 oc = o - s.center;
    const double b = oc.dot(d);
    const double c = oc.dot(oc) - s.radius * s.radius;
    const double disc = b * b - c;
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double t0 = -b - sq;
    if (t0 > kMinHitDistance) return t0;
    const double t1 = -b + sq;
    if (t1 > kMinHitDistance) return t1;
    return std::nullopt;
}

std::optional<double> intersect(const Box& box, const Vec3& o, const Vec3& d) {
    double tmin = -std::numeric_limits<double>::infinity();
    double tmax = std::numeric_limits<double>::infinity();
    const double os[3] = {o.x, o.y, o.z};
    const double ds[3] = {d.x, d.y, d.z};
    const double lo[3] = {box.min.x, box.min.y, box.min.z};
    const double hi[3] = {box.max.x, box.max.y, box.max.z};
    for (int i = 0; i < 3; ++i) {
        if (ds[i] == 0.0) {
            if (os[i] < lo[i] || os[i] > hi[i]) return std::nullopt;
            continue;
        }
        double t0 = (lo[i] - os[i]) / ds[i];
        double t1 = (hi[i] - os[i]) / ds[i];
        if (t0 > t1) std::swap(t0, t1);
        tmin = std::max(tmin, t0);
        tmax = std::min(tmax, t1);
        if (tmin > tmax) return std::nullopt;
    }
    if (tmin > kMinHitDistance) return tmin;
    if (tmax > kMinHitDistance) return tmax;
    return std::nullopt;
}

std::optional<double> intersect(const Plane& pl, const Vec3& o, const Vec3& d) {
    const double denom = pl.normal.dot(d);
    if (denom == 0.0) return std::nullopt;
    const double t = (pl.offset - pl.normal.dot(o)) / denom;
    if (t > kMinHitDistance) return t;
    return std::nullopt;
}

}  // namespace

void validate(Scene& scene) {
    for (auto& prim : scene.primitives) {
        if (const auto* s = std::get_if<Sphere>(&prim.shape)) {
            if (!(s->radius > 0.0))
                raise(ErrorCategory::config, "sphere radius must be positive");
        } else if (const auto* b = std::get_if<Box>(&prim.shape)) {
            if (!(b->min.x < b->max.x && b->min.y < b->max.y && b->min.z < b->max.z))
                raise(ErrorCategory::config, "box min must be component-wise below max");
        } else if (auto* pl = std::get_if<Plane>(&prim.shape)) {
            const double n = pl->normal.norm();
            if (!(n > 0.0)) raise(ErrorCategory::config, "plane normal must be nonzero");
            pl->normal = pl->normal / n;
        }
        if (const auto* checker = std::get_if<CheckerTexture>(&prim.texture)) {
            if (!(checker->scale > 0.0))
                raise(ErrorCategory::config, "checker scale must be positive");
        } else if (const auto* noise = std::get_if<NoiseTexture>(&prim.texture)) {
            if (!(noise->scale > 0.0) || noise->amplitude < 0.0)
                raise(ErrorCategory::config, "noise texture needs positive scale and amplitude >= 0");
        }
    }
}

std::uint8_t texture_gray(const Primitive& prim, const Vec3& hit_point) {
    double u = 0.0, v = 0.0;
    std::visit([&](const auto& shape) { surface_uv(shape, hit_point, u, v); }, prim.shape);
    return shade(prim.texture, u, v);
}

std::optional<RayHit> ray_cast(const Scene& scene, const Vec3& origin, const Vec3& direction) {
    if (std::abs(direction.norm() - 1.0) > 1e-9)
        raise(ErrorCategory::contract, "ray direction must be normalized");
    const Primitive* best = nullptr;
    double best_t = std::numeric_limits<double>::infinity();
    for (const auto& prim : scene.primitives) {
        const auto t = std::visit(
            [&](const auto& shape) { return intersect(shape, origin, direction); }, prim.shape);
        if (t && *t < best_t) {
            best_t = *t;
            best = &prim;
        }
    }
    if (!best) return std::nullopt;
    return RayHit{best_t, texture_gray(*best, origin + direction * best_t)};
}

}  // namespace corridor::sim
