// AVX2 kernel variants. Bit-identical to the scalar reference: integer ops
// exactly, float/double ops lane-for-lane in the same sequence (this TU and
// the scalar one are both built with fp-contract off). Tails fall back to
// the scalar loop; every lane is independent, so mixing is safe.

#include <algorithm>
#include <cstdint>
#include <vector>

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace corridor::simd::avx2 {

void absdiff_shift_u8(const std::uint8_t* left, const std::uint8_t* right,
                      int width, int shift, std::uint16_t* out) {
    int x = 0;
    const int head = std::min(shift, width);
    for (; x < head; ++x) {
        const int a = left[x], b = right[0];
        out[x] = static_cast<std::uint16_t>(a > b ? a - b : b - a);
    }
    for (; x + 32 <= width; x += 32) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(left + x));
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(right + x - shift));
        const __m256i diff = _mm256_sub_epi8(_mm256_max_epu8(a, b), _mm256_min_epu8(a, b));
        const __m128i lo = _mm256_castsi256_si128(diff);
        const __m128i hi = _mm256_extracti128_si256(diff, 1);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + x), _mm256_cvtepu8_epi16(lo));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + x + 16), _mm256_cvtepu8_epi16(hi));
    }
    for (; x < width; ++x) {
        const int a = left[x], b = right[x - shift];
        out[x] = static_cast<std::uint16_t>(a > b ? a - b : b - a);
    }
}

void add_row_u16(std::uint16_t* acc, const std::uint16_t* row, int n) {
    int i = 0;
    for (; i + 16 <= n; i += 16) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), _mm256_add_epi16(a, b));
    }
    for (; i < n; ++i) acc[i] = static_cast<std::uint16_t>(acc[i] + row[i]);
}

void sub_row_u16(std::uint16_t* acc, const std::uint16_t* row, int n) {
    int i = 0;
    for (; i + 16 <= n; i += 16) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), _mm256_sub_epi16(a, b));
    }
    for (; i < n; ++i) acc[i] = static_cast<std::uint16_t>(acc[i] - row[i]);
}

namespace {

inline std::uint16_t hmin_u16(__m256i v) {
    const __m128i m = _mm_min_epu16(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
    return static_cast<std::uint16_t>(_mm_cvtsi128_si32(_mm_minpos_epu16(m)));
}

}  // namespace

std::uint16_t sgbm_path_step_u16(const std::uint16_t* cost, const std::uint16_t* prev,
                                 int num_disp, std::uint16_t p1, std::uint16_t p2,
                                 std::uint16_t prev_min, std::uint16_t* out) {
    constexpr int kMaxDisp = 1024;
    if (num_disp > kMaxDisp)
        return scalar::sgbm_path_step_u16(cost, prev, num_disp, p1, p2, prev_min, out);

    // Padded copy so prev[d-1] / prev[d+1] are +inf at the ends.
    alignas(32) std::uint16_t padded[kMaxDisp + 2];
    padded[0] = 0xFFFF;
    std::copy(prev, prev + num_disp, padded + 1);
    padded[num_disp + 1] = 0xFFFF;

    const __m256i vp1 = _mm256_set1_epi16(static_cast<short>(p1));
    const __m256i vmin = _mm256_set1_epi16(static_cast<short>(prev_min));
    const __m256i vcap = _mm256_adds_epu16(vmin, _mm256_set1_epi16(static_cast<short>(p2)));
    __m256i running = _mm256_set1_epi16(static_cast<short>(0xFFFF));

    int d = 0;
    for (; d + 16 <= num_disp; d += 16) {
        const __m256i pc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(padded + 1 + d));
        const __m256i pm = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(padded + d));
        const __m256i pp = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(padded + 2 + d));
        __m256i best = _mm256_min_epu16(pc, _mm256_adds_epu16(pm, vp1));
        best = _mm256_min_epu16(best, _mm256_adds_epu16(pp, vp1));
        best = _mm256_min_epu16(best, vcap);
        const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cost + d));
        const __m256i v = _mm256_add_epi16(c, _mm256_sub_epi16(best, vmin));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + d), v);
        running = _mm256_min_epu16(running, v);
    }
    std::uint16_t new_min = hmin_u16(running);
    const std::uint32_t cap = static_cast<std::uint32_t>(prev_min) + p2;
    for (; d < num_disp; ++d) {
        std::uint32_t best = prev[d];
        if (d > 0) best = std::min(best, static_cast<std::uint32_t>(prev[d - 1]) + p1);
        if (d + 1 < num_disp) best = std::min(best, static_cast<std::uint32_t>(prev[d + 1]) + p1);
        best = std::min(best, cap);
        out[d] = static_cast<std::uint16_t>(cost[d] + best - prev_min);
        new_min = std::min(new_min, out[d]);
    }
    return new_min;
}

void accumulate_u16_u32(std::uint32_t* acc, const std::uint16_t* src, int n) {
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
        const __m256i w = _mm256_cvtepu16_epi32(s);
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), _mm256_add_epi32(a, w));
    }
    for (; i < n; ++i) acc[i] += src[i];
}

void tridiag_cols_f64(const double* lower, const double* diag, const double* upper,
                      double* rhs, double* scratch, int width, int height) {
    const std::size_t w = static_cast<std::size_t>(width);
    const __m256d one = _mm256_set1_pd(1.0);
    int x = 0;
    for (; x + 4 <= width; x += 4) {
        const __m256d inv = _mm256_div_pd(one, _mm256_loadu_pd(diag + x));
        _mm256_storeu_pd(scratch + x, _mm256_mul_pd(_mm256_loadu_pd(upper + x), inv));
        _mm256_storeu_pd(rhs + x, _mm256_mul_pd(_mm256_loadu_pd(rhs + x), inv));
    }
    for (; x < width; ++x) {
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
        x = 0;
        for (; x + 4 <= width; x += 4) {
            const __m256d l = _mm256_loadu_pd(lo + x);
            const __m256d denom = _mm256_sub_pd(_mm256_loadu_pd(di + x),
                                                _mm256_mul_pd(l, _mm256_loadu_pd(cpm + x)));
            const __m256d inv = _mm256_div_pd(one, denom);
            _mm256_storeu_pd(cp + x, _mm256_mul_pd(_mm256_loadu_pd(up + x), inv));
            const __m256d rr = _mm256_sub_pd(_mm256_loadu_pd(r + x),
                                             _mm256_mul_pd(l, _mm256_loadu_pd(rm + x)));
            _mm256_storeu_pd(r + x, _mm256_mul_pd(rr, inv));
        }
        for (; x < width; ++x) {
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
        x = 0;
        for (; x + 4 <= width; x += 4) {
            const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(r + x),
                                            _mm256_mul_pd(_mm256_loadu_pd(cp + x),
                                                          _mm256_loadu_pd(rn + x)));
            _mm256_storeu_pd(r + x, v);
        }
        for (; x < width; ++x) r[x] = r[x] - cp[x] * rn[x];
    }
}

void stencil5_row_f64(const double* prev, const double* cur, const double* next,
                      const double* dl, const double* dd, const double* du,
                      const double* vp, const double* vn, int n, double* out) {
    auto tail = [&](int x) {
        double v = dd[x] * cur[x];
        if (x > 0) v += dl[x] * cur[x - 1];
        if (x + 1 < n) v += du[x] * cur[x + 1];
        if (vp) v += vp[x] * prev[x];
        if (vn) v += vn[x] * next[x];
        out[x] = v;
    };
    if (n < 6) {
        for (int x = 0; x < n; ++x) tail(x);
        return;
    }
    tail(0);
    int x = 1;
    for (; x + 4 <= n - 1; x += 4) {
        __m256d v = _mm256_mul_pd(_mm256_loadu_pd(dd + x), _mm256_loadu_pd(cur + x));
        v = _mm256_add_pd(v, _mm256_mul_pd(_mm256_loadu_pd(dl + x), _mm256_loadu_pd(cur + x - 1)));
        v = _mm256_add_pd(v, _mm256_mul_pd(_mm256_loadu_pd(du + x), _mm256_loadu_pd(cur + x + 1)));
        if (vp) v = _mm256_add_pd(v, _mm256_mul_pd(_mm256_loadu_pd(vp + x), _mm256_loadu_pd(prev + x)));
        if (vn) v = _mm256_add_pd(v, _mm256_mul_pd(_mm256_loadu_pd(vn + x), _mm256_loadu_pd(next + x)));
        _mm256_storeu_pd(out + x, v);
    }
    for (; x < n; ++x) tail(x);
}

void transpose_f64(const double* src, int src_w, int src_h, double* dst) {
    constexpr int B = 4;
    const std::size_t w = static_cast<std::size_t>(src_w);
    const std::size_t h = static_cast<std::size_t>(src_h);
    int y = 0;
    for (; y + B <= src_h; y += B) {
        int x = 0;
        for (; x + B <= src_w; x += B) {
            const __m256d r0 = _mm256_loadu_pd(src + (y + 0) * w + x);
            const __m256d r1 = _mm256_loadu_pd(src + (y + 1) * w + x);
            const __m256d r2 = _mm256_loadu_pd(src + (y + 2) * w + x);
            const __m256d r3 = _mm256_loadu_pd(src + (y + 3) * w + x);
            const __m256d t0 = _mm256_unpacklo_pd(r0, r1);
            const __m256d t1 = _mm256_unpackhi_pd(r0, r1);
            const __m256d t2 = _mm256_unpacklo_pd(r2, r3);
            const __m256d t3 = _mm256_unpackhi_pd(r2, r3);
            _mm256_storeu_pd(dst + (x + 0) * h + y, _mm256_permute2f128_pd(t0, t2, 0x20));
            _mm256_storeu_pd(dst + (x + 1) * h + y, _mm256_permute2f128_pd(t1, t3, 0x20));
            _mm256_storeu_pd(dst + (x + 2) * h + y, _mm256_permute2f128_pd(t0, t2, 0x31));
            _mm256_storeu_pd(dst + (x + 3) * h + y, _mm256_permute2f128_pd(t1, t3, 0x31));
        }
        for (; x < src_w; ++x)
            for (int yy = y; yy < y + B; ++yy) dst[x * h + yy] = src[yy * w + x];
    }
    for (; y < src_h; ++y)
        for (int x = 0; x < src_w; ++x) dst[x * h + y] = src[y * w + x];
}

void disp_to_depth_f32(const float* disp, int n, float fb, float d_floor, float* out) {
    const __m256 vfb = _mm256_set1_ps(fb);
    const __m256 vfloor = _mm256_set1_ps(d_floor);
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 d = _mm256_max_ps(_mm256_loadu_ps(disp + i), vfloor);
        _mm256_storeu_ps(out + i, _mm256_div_ps(vfb, d));
    }
    for (; i < n; ++i) {
        const float d = disp[i] < d_floor ? d_floor : disp[i];
        out[i] = fb / d;
    }
}

}  // namespace corridor::simd::avx2

namespace corridor::simd {

const KernelTable kAvx2Table = {
    &avx2::absdiff_shift_u8,
    &avx2::add_row_u16,
    &avx2::sub_row_u16,
    &avx2::sgbm_path_step_u16,
    &avx2::accumulate_u16_u32,
    &avx2::tridiag_cols_f64,
    &avx2::stencil5_row_f64,
    &avx2::transpose_f64,
    &avx2::disp_to_depth_f32,
};

}  // namespace corridor::simd
