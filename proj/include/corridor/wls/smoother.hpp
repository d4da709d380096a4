#pragma once

#include <cstdint>

#include "corridor/core/image.hpp"
#include "corridor/stereo/sgbm.hpp"

namespace corridor::wls {

/// Edge-preserving weighted-least-squares smoothing parameters.
///
/// The smoother minimizes
///   sum_p m_p (u_p - f_p)^2 + lambda * sum_p sum_{q in N4(p)} w_pq (u_p - u_q)^2
/// where m_p is 1 for valid pixels and kHoleMass for holes (so holes are
/// filled), and w_pq = max(exp(-|g_p - g_q| / sigma_color), kWeightFloor).
///
/// Solution method: `iterations` pairs of alternating horizontal/vertical
/// tridiagonal passes with the attenuated per-pass weight
/// lambda_t = 1.5 * lambda * 4^(T-t) / (4^T - 1), followed by conjugate-
/// gradient refinement of the full 2D normal equations (preconditioned by
/// the same separable line solves) until `refine_tolerance` or
/// `max_refine_iterations`. The cascade alone approximates the minimizer;
/// the refinement makes the output the actual minimizer.
struct WlsParams {
    double lambda = 8000.0;
    double sigma_color = 1.5;  // gray levels
    int iterations = 3;        // alternating pass pairs in the cascade
    double refine_tolerance = 1e-10;  // relative inf-norm residual
    int max_refine_iterations = 300;

    void validate() const;
};

/// Data weight assigned to invalid pixels. Nonzero so that every system is
/// nonsingular and the lambda = 0 case reproduces the scanline fill exactly.
constexpr double kHoleMass = 1e-4;
/// Lower bound on guide weights; keeps regions behind hard guide edges
/// numerically connected without visibly coupling them (lambda * floor is
/// tiny against unit data mass).
constexpr double kWeightFloor = 1e-6;

/// Guide affinity between two gray levels.
double guide_weight(std::uint8_t a, std::uint8_t b, double sigma_color);

/// Smooths `disparity` guided by the left image, filling invalid pixels.
/// The result is fully valid. Output values are clamped to the range of the
/// valid input values (the energy's maximum principle).
/// Throws ErrorCategory::contract on size mismatch or an all-invalid input.
stereo::DisparityMap wls_smooth(const stereo::DisparityMap& disparity,
                                const GrayImage& guide, const WlsParams& params);

}  // namespace corridor::wls
