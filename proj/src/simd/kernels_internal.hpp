#pragma once

// Shared declarations between the kernel translation units and the
// dispatcher. Not installed; include only from src/simd/.

#include <cstdint>

#include "corridor/simd/dispatch.hpp"

namespace corridor::simd {

extern const KernelTable kScalarTable;

namespace scalar {
void absdiff_shift_u8(const std::uint8_t* left, const std::uint8_t* right,
                      int width, int shift, std::uint16_t* out);
void add_row_u16(std::uint16_t* acc, const std::uint16_t* row, int n);
void sub_row_u16(std::uint16_t* acc, const std::uint16_t* row, int n);
std::uint16_t sgbm_path_step_u16(const std::uint16_t* cost, const std::uint16_t* prev,
                                 int num_disp, std::uint16_t p1, std::uint16_t p2,
                                 std::uint16_t prev_min, std::uint16_t* out);
void accumulate_u16_u32(std::uint32_t* acc, const std::uint16_t* src, int n);
void tridiag_cols_f64(const double* lower, const double* diag, const double* upper,
                      double* rhs, double* scratch, int width, int height);
void stencil5_row_f64(const double* prev, const double* cur, const double* next,
                      const double* dl, const double* dd, const double* du,
                      const double* vp, const double* vn, int n, double* out);
void transpose_f64(const double* src, int src_w, int src_h, double* dst);
void disp_to_depth_f32(const float* disp, int n, float fb, float d_floor, float* out);
}  // namespace scalar

#ifdef CORRIDOR_HAVE_AVX2
extern const KernelTable kAvx2Table;
#endif

}  // namespace corridor::simd
