#pragma once

#include <cstdint>

namespace corridor::simd {

enum class Level : int { scalar = 0, avx2 = 1 };

const char* level_name(Level level);

/// Best level supported by the running CPU (and compiled in).
Level detect();

/// Level used by all dispatched kernels. Defaults to detect(), overridable
/// via the CORRIDOR_SIMD environment variable ("scalar" or "avx2") or
/// set_active(). Throws ErrorCategory::config for unsupported requests.
Level active();
void set_active(Level level);

/// Data-parallel inner-loop kernels. Every entry has a scalar reference
/// implementation; the AVX2 variants must produce bit-identical results
/// (integer kernels exactly; float kernels are compiled with fp-contract
/// off so the operation sequence matches lane-for-lane).
struct KernelTable {
    // out[x] = |left[x] - right[max(x - shift, 0)]| for x in [0, width)
    void (*absdiff_shift_u8)(const std::uint8_t* left, const std::uint8_t* right,
                             int width, int shift, std::uint16_t* out);

    // acc[i] += row[i] / acc[i] -= row[i]
    void (*add_row_u16)(std::uint16_t* acc, const std::uint16_t* row, int n);
    void (*sub_row_u16)(std::uint16_t* acc, const std::uint16_t* row, int n);

    // One SGBM path recurrence step across the disparity axis:
    //   out[d] = cost[d] + min(prev[d], prev[d-1]+p1, prev[d+1]+p1, prev_min+p2)
    //            - prev_min
    // (out-of-range prev treated as +inf). Returns min over out.
    std::uint16_t (*sgbm_path_step_u16)(const std::uint16_t* cost,
                                        const std::uint16_t* prev, int num_disp,
                                        std::uint16_t p1, std::uint16_t p2,
                                        std::uint16_t prev_min, std::uint16_t* out);

    // acc[i] += src[i] (widening)
    void (*accumulate_u16_u32)(std::uint32_t* acc, const std::uint16_t* src, int n);

    // Solves `width` independent tridiagonal systems laid out along image
    // columns (row i, column x): lower/diag/upper are H x W coefficient
    // rasters, rhs is overwritten with the solution, scratch must hold
    // height*width doubles. lower row 0 and upper row height-1 are ignored.
    // Precondition: diagonally dominant (guaranteed by the smoother's
    // construction), so no pivoting.
    void (*tridiag_cols_f64)(const double* lower, const double* diag,
                             const double* upper, double* rhs, double* scratch,
                             int width, int height);

    // 5-point stencil row apply:
    //   out[x] = dd[x]*cur[x] + dl[x]*cur[x-1] + du[x]*cur[x+1]
    //            + vp[x]*prev[x] + vn[x]*next[x]
    // dl[0] and du[n-1] are ignored; prev/next may be null when vp/vn are null.
    void (*stencil5_row_f64)(const double* prev, const double* cur, const double* next,
                             const double* dl, const double* dd, const double* du,
                             const double* vp, const double* vn, int n, double* out);

    // dst[x*src_h + y] = src[y*src_w + x]
    void (*transpose_f64)(const double* src, int src_w, int src_h, double* dst);

    // out[i] = fb / max(disp[i], d_floor)
    void (*disp_to_depth_f32)(const float* disp, int n, float fb, float d_floor,
                              float* out);
};

/// Table for an explicit level (used by equivalence tests).
const KernelTable& kernels(Level level);

/// Table for the active level.
inline const KernelTable& kernels() { return kernels(active()); }

}  // namespace corridor::simd
