#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

namespace corridor::fusion {

struct Vec2 {
    double v0 = 0.0, v1 = 0.0;
};

struct Mat2 {
    double m00 = 0.0, m01 = 0.0, m10 = 0.0, m11 = 0.0;

    static Mat2 diagonal(double d0, double d1) { return {d0, 0.0, 0.0, d1}; }
    double max_asymmetry() const { return m01 > m10 ? m01 - m10 : m10 - m01; }
    /// Smallest eigenvalue of the symmetrized matrix.
    double min_eigenvalue() const;
};

/// Constant-velocity model along the optical axis, measured by two sensors
/// that both observe the distance: stereo centroid depth and the 1D-LiDAR.
struct FusionConfig {
    double dt = 0.1;                    // nominal sampling time (s)
    double stereo_variance = 0.0254800198;  // m^2
    double lidar_variance = 0.0005798584;   // m^2
    Mat2 process_cov = Mat2::diagonal(1e-4, 1e-4);
    double control_gain = 1.0;         // `a` in accel = a*u

    void validate() const;
};

struct Measurement {
    double stereo_depth_m = 0.0;        // D_c
    std::optional<double> lidar_m;      // d_L; empty when out of range
    double timestamp_s = 0.0;
};

/// [distance m, closing rate m/s] with covariance. States are only usable
/// after initialize().
struct KalmanState {
    Vec2 x;
    Mat2 P;
    bool initialized = false;
    double timestamp_s = 0.0;

    /// One-line text dump (x, P, timestamp) for debugging.
    std::string debug_dump() const;
};

/// Sets x to [mean of available channels, 0] and a wide prior
/// P = diag(10 * max(stereo_var, lidar_var), 1).
void initialize(KalmanState& state, const Measurement& m, const FusionConfig& cfg);

/// x <- A x + B u with A = [[1, dt], [0, 1]], B = a * [dt^2/2, dt]^T;
/// P <- A P A^T + process_cov.
void kf_predict(KalmanState& state, const FusionConfig& cfg, double dt,
                double control_accel = 0.0);

/// Measurement update with C = [[1,0],[1,0]] and diagonal measurement
/// covariance diag(stereo_var, lidar_var); the LiDAR row is dropped when
/// the reading is out of range. Processed as sequential scalar rows, which
/// is algebraically identical for a diagonal covariance and avoids the
/// cancellation the stacked 2x2 inverse suffers under wide priors. The
/// covariance is symmetrized after each row.
void kf_update(KalmanState& state, const Measurement& m, const FusionConfig& cfg);

/// d_K: current fused distance estimate.
double fused_distance(const KalmanState& state);

/// Unbiased sample variance sum((x - mean)^2) / (n - 1); n >= 2.
double sample_variance(std::span<const double> samples);

}  // namespace corridor::fusion
