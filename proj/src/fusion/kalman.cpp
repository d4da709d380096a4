#include "corridor/fusion/kalman.hpp"

#include <cmath>
#include <cstdio>

#include "corridor/core/error.hpp"

namespace corridor::fusion {

double Mat2::min_eigenvalue() const {
    const double b = 0.5 * (m01 + m10);
    const double tr = m00 + m11;
    const double det = m00 * m11 - b * b;
    const double disc = std::sqrt(std::max(0.25 * tr * tr - det, 0.0));
    return 0.5 * tr - disc;
}

void FusionConfig::validate() const {
    if (!(dt > 0.0)) raise(ErrorCategory::config, "dt must be positive");
    if (!(stereo_variance > 0.0) || !(lidar_variance > 0.0))
        raise(ErrorCategory::config, "measurement variances must be positive");
    if (process_cov.max_asymmetry() > 1e-12 || process_cov.min_eigenvalue() < -1e-12)
        raise(ErrorCategory::config, "process covariance must be symmetric PSD");
}

std::string KalmanState::debug_dump() const {
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "t=%.6f x=[%.9g %.9g] P=[%.9g %.9g; %.9g %.9g] init=%d", timestamp_s,
                  x.v0, x.v1, P.m00, P.m01, P.m10, P.m11, initialized ? 1 : 0);
    return buf;
}

void initialize(KalmanState& state, const Measurement& m, const FusionConfig& cfg) {
    cfg.validate();
    double mean = m.stereo_depth_m;
    if (m.lidar_m) mean = 0.5 * (m.stereo_depth_m + *m.lidar_m);
    state.x = {mean, 0.0};
    state.P = Mat2::diagonal(10.0 * std::max(cfg.stereo_variance, cfg.lidar_variance), 1.0);
    state.initialized = true;
    state.timestamp_s = m.timestamp_s;
}

void kf_predict(KalmanState& state, const FusionConfig& cfg, double dt, double control_accel) {
    if (!state.initialized) raise(ErrorCategory::contract, "kalman state not initialized");
    if (dt < 0.0) raise(ErrorCategory::contract, "negative prediction interval");

    const double u = cfg.control_gain * control_accel;
    state.x = {state.x.v0 + dt * state.x.v1 + 0.5 * dt * dt * u, state.x.v1 + dt * u};

    // P <- A P A^T + Q with A = [[1, dt], [0, 1]].
    const Mat2 P = state.P;
    const double p00 = P.m00 + dt * (P.m10 + P.m01) + dt * dt * P.m11;
    const double p01 = P.m01 + dt * P.m11;
    const double p10 = P.m10 + dt * P.m11;
    state.P = {p00 + cfg.process_cov.m00, p01 + cfg.process_cov.m01,
               p10 + cfg.process_cov.m10, P.m11 + cfg.process_cov.m11};
    state.timestamp_s += dt;
}

namespace {

// Scalar row update for a position-only observation y = x0 + v.
void scalar_row_update(KalmanState& state, double y, double variance) {
    const double s = state.P.m00 + variance;
    if (!(s > 0.0) || !std::isfinite(s))
        raise(ErrorCategory::numeric, "innovation covariance not invertible");
    const double k0 = state.P.m00 / s;
    const double k1 = state.P.m10 / s;
    const double innov = y - state.x.v0;
    state.x = {state.x.v0 + k0 * innov, state.x.v1 + k1 * innov};
    // P <- (I - K C) P with C = [1, 0], then symmetrize.
    const Mat2 P = state.P;
    Mat2 next{(1.0 - k0) * P.m00, (1.0 - k0) * P.m01,
              P.m10 - k1 * P.m00, P.m11 - k1 * P.m01};
    const double off = 0.5 * (next.m01 + next.m10);
    next.m01 = next.m10 = off;
    state.P = next;
}

}  // namespace

void kf_update(KalmanState& state, const Measurement& m, const FusionConfig& cfg) {
    if (!state.initialized) raise(ErrorCategory::contract, "kalman state not initialized");
    scalar_row_update(state, m.stereo_depth_m, cfg.stereo_variance);
    if (m.lidar_m) scalar_row_update(state, *m.lidar_m, cfg.lidar_variance);
    state.timestamp_s = m.timestamp_s;
}

double fused_distance(const KalmanState& state) {
    if (!state.initialized) raise(ErrorCategory::contract, "kalman state not initialized");
    return state.x.v0;
}

double sample_variance(std::span<const double> samples) {
    if (samples.size() < 2)
        raise(ErrorCategory::contract, "sample_variance needs at least two samples");
    double mean = 0.0;
    for (const double v : samples) mean += v;
    mean /= static_cast<double>(samples.size());
    double ss = 0.0;
    for (const double v : samples) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(samples.size() - 1);
}

}  // namespace corridor::fusion
