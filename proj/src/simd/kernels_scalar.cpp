// Scalar reference kernels. These define the semantics the SIMD variants
// are tested against; keep them straightforward.

#include <algorithm>
#include <cstdint>

#include "corridor/simd/dispatch.hpp"

namespace corridor::simd::scalar {

void absdiff_shift_u8(const std::uint8_t* left, const std::uint8_t* right,
                      int width, int shift, std::uint16_t* out) {
    for (int x = 0; x < width; ++x) {
        const int xr = x - shift;
        const int a = left[x];
        const int b = right[xr < 0 ? 0 : xr];
        out[x] = static_cast<std::uint16_t>(a > b ? a - b : b - a);
    }
}

void add_row_u16(std::uint16_t* acc, const std::uint16_t* row, int n) {
    for (int i = 0; i < n; ++i) acc[i] = static_cast<std::uint16_t>(acc[i] + row[i]);
}

void sub_row_u16(std::uint16_t* acc, const std::uint16_t* row, int n) {
    for (int i = 0; i < n; ++i) acc[i] = static_cast<std::uint16_t>(acc[i] - row[i]);
}

std::uint16_t sgbm_path_step_u16(const std::uint16_t* cost, const std::uint16_t* prev,
                                 int num_disp, std::uint16_t p1, std::uint16_t p2,
                                 std::uint16_t prev_min, std::uint16_t* out) {
    const std::uint32_t cap = static_cast<std::uint32_t>(prev_min) + p2;
    std::uint16_t new_min = 0xFFFF;
    for (int d = 0; d < num_disp; ++d) {
        std::uint32_t best = prev[d];
        if (d > 0) best = std::min(best, static_cast<std::uint32_t>(prev[d - 1]) + p1);
        if (d + 1 < num_disp) best = std::min(best, static_cast<std::uint32_t>(prev[d + 1]) + p1);
        best = std::min(best, cap);
        const std::uint32_t v = cost[d] + best - prev_min;
        out[d] = static_cast<std::uint16_t>(v);
        new_min = std::min(new_min, out[d]);
    }
    return new_min;
}

void accumulate_u16_u32(std::uint32_t* acc, const std::uint16_t* src, int n) {
    for (int i = 0; i < n; ++i) acc[i] += src[i];
}

void tridiag_cols_f64(const double* lower, const double* diag, const double* upper,
                      double* rhs, double* scratch, int width, int height) {
    // Thomas algorithm marching over rows; every column is an independent
    // system. scratch holds the normalized super-diagonal.
    const std::size_t w = static_cast<std::size_t>(width);
    for (int x = 0; x < width; ++x) {
        const double inv = 1.0 / diag[x];
        scratch[x] = upper[x] * inv;
        rhs[x] = rhs[x] * inv;
    }
    for (int i = 1; i < height; ++i) {
        const double* lo = lower + i * w;
        const double* di = diag + i * w;
        const double* up = upper + i * w;
        double* cp = scratch + i * w;
        const double* cpm = scratch + (i - 1) * w;
        double* r = rhs + i * w;
        const double* rm = rhs + (i - 1) * w;
        for (int x = 0; x < width; ++x) {
            const double denom = di[x] - lo[x] * cpm[x];
            const double inv = 1.0 / denom;
            cp[x] = up[x] * inv;
            r[x] = (r[x] - lo[x] * rm[x]) * inv;
        }
    }
    for (int i = height - 2; i >= 0; --i) {
        double* r = rhs + i * w;
        const double* rn = rhs + (i + 1) * w;
        const double* cp = scratch + i * w;
        for (int x = 0; x < width; ++x) r[x] = r[x] - cp[x] * rn[x];
    }
}

void stencil5_row_f64(const double* prev, const double* cur, const double* next,
                      const double* dl, const double* dd, const double* du,
                      const double* vp, const double* vn, int n, double* out) {
    for (int x = 0; x < n; ++x) {
        double v = dd[x] * cur[x];
        if (x > 0) v += dl[x] * cur[x - 1];
        if (x + 1 < n) v += du[x] * cur[x + 1];
        if (vp) v += vp[x] * prev[x];
        if (vn) v += vn[x] * next[x];
        out[x] = v;
    }
}

void transpose_f64(const double* src, int src_w, int src_h, double* dst) {
    for (int y = 0; y < src_h; ++y)
        for (int x = 0; x < src_w; ++x)
            dst[static_cast<std::size_t>(x) * src_h + y] =
                src[static_cast<std::size_t>(y) * src_w + x];
}

void disp_to_depth_f32(const float* disp, int n, float fb, float d_floor, float* out) {
    for (int i = 0; i < n; ++i) {
        const float d = disp[i] < d_floor ? d_floor : disp[i];
        out[i] = fb / d;
    }
}

}  // namespace corridor::simd::scalar

namespace corridor::simd {

const KernelTable kScalarTable = {
    &scalar::absdiff_shift_u8,
    &scalar::add_row_u16,
    &scalar::sub_row_u16,
    &scalar::sgbm_path_step_u16,
    &scalar::accumulate_u16_u32,
    &scalar::tridiag_cols_f64,
    &scalar::stencil5_row_f64,
    &scalar::transpose_f64,
    &scalar::disp_to_depth_f32,
};

}  // namespace corridor::simd
