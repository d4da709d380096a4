#include "corridor/stereo/sgbm.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "corridor/core/error.hpp"
#include "corridor/simd/dispatch.hpp"

namespace corridor::stereo {

int MatchParams::resolved_p1() const {
    const int s = 2 * block_radius + 1;
    return p1.value_or(8 * s * s);
}

int MatchParams::resolved_p2() const {
    const int s = 2 * block_radius + 1;
    return p2.value_or(32 * s * s);
}

void MatchParams::validate(int image_width) const {
    if (max_disparity <= 0 || max_disparity > image_width / 2)
        raise(ErrorCategory::config, "max_disparity must be in (0, width/2]");
    if (block_radius < 0) raise(ErrorCategory::config, "block_radius must be >= 0");
    if (!(resolved_p2() > resolved_p1() && resolved_p1() > 0))
        raise(ErrorCategory::config, "penalties must satisfy p2 > p1 > 0");
    if (num_paths != 4 && num_paths != 8)
        raise(ErrorCategory::config, "num_paths must be 4 or 8");
    if (uniqueness_ratio < 0) raise(ErrorCategory::config, "uniqueness_ratio must be >= 0");
    const int s = 2 * block_radius + 1;
    // Path values stay within C_max + p2; keep that inside u16.
    if (s * s * 255 + resolved_p2() > 0xFFFF)
        raise(ErrorCategory::config, "block_radius/p2 combination overflows u16 path costs");
}

bool DisparityMap::fully_valid() const {
    for (const auto m : validity.pixels())
        if (m != kMaskValid) return false;
    return true;
}

std::size_t DisparityMap::valid_count() const {
    std::size_t n = 0;
    for (const auto m : validity.pixels()) n += (m == kMaskValid) ? 1 : 0;
    return n;
}

std::uint32_t matching_cost(const GrayImage& left, const GrayImage& right, int x, int y,
                            int d, const MatchParams& params) {
    if (d < 0 || d >= params.max_disparity)
        raise(ErrorCategory::contract, "disparity outside [0, max_disparity)");
    const int r = params.block_radius;
    std::uint32_t sum = 0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            const int a = left.at_clamped(x + dx, y + dy);
            const int b = right.at_clamped(x + dx - d, y + dy);
            sum += static_cast<std::uint32_t>(std::abs(a - b));
        }
    return sum;
}

CostVolume build_cost_volume(const GrayImage& left, const GrayImage& right,
                             const MatchParams& params) {
    if (!left.same_size(right)) raise(ErrorCategory::config, "stereo pair size mismatch");
    params.validate(left.width());

    const int w = left.width(), h = left.height();
    const int D = params.max_disparity, r = params.block_radius;
    const auto& k = simd::kernels();

    CostVolume vol{w, h, D, std::vector<std::uint16_t>(
                                static_cast<std::size_t>(w) * h * D, 0)};

    // Plane-at-a-time: per disparity, absolute differences -> horizontal
    // box sums -> sliding vertical sums, then scattered into the
    // disparity-innermost layout.
    std::vector<std::uint16_t> ad(static_cast<std::size_t>(w) * h);
    std::vector<std::uint16_t> hsum(static_cast<std::size_t>(w) * h);
    std::vector<std::uint16_t> vsum(w);

    for (int d = 0; d < D; ++d) {
        for (int y = 0; y < h; ++y)
            k.absdiff_shift_u8(left.row(y), right.row(y), w, d, ad.data() + static_cast<std::size_t>(y) * w);

        // Horizontal box with border clamp.
        for (int y = 0; y < h; ++y) {
            const std::uint16_t* in = ad.data() + static_cast<std::size_t>(y) * w;
            std::uint16_t* out = hsum.data() + static_cast<std::size_t>(y) * w;
            std::uint32_t acc = 0;
            for (int i = -r; i <= r; ++i) acc += in[std::clamp(i, 0, w - 1)];
            out[0] = static_cast<std::uint16_t>(acc);
            for (int x = 1; x < w; ++x) {
                acc += in[std::clamp(x + r, 0, w - 1)];
                acc -= in[std::clamp(x - r - 1, 0, w - 1)];
                out[x] = static_cast<std::uint16_t>(acc);
            }
        }

        // Vertical sliding window (rows clamped at the borders).
        auto hrow = [&](int y) {
            return hsum.data() + static_cast<std::size_t>(std::clamp(y, 0, h - 1)) * w;
        };
        std::fill(vsum.begin(), vsum.end(), 0);
        for (int i = -r; i <= r; ++i) k.add_row_u16(vsum.data(), hrow(i), w);
        for (int y = 0; y < h; ++y) {
            if (y > 0) {
                k.add_row_u16(vsum.data(), hrow(y + r), w);
                k.sub_row_u16(vsum.data(), hrow(y - r - 1), w);
            }
            std::uint16_t* cell = vol.data.data() + static_cast<std::size_t>(y) * w * D + d;
            for (int x = 0; x < w; ++x) cell[static_cast<std::size_t>(x) * D] = vsum[x];
        }
    }
    return vol;
}

CostVolume mirror_cost_volume(const CostVolume& lv) {
    CostVolume rv{lv.width, lv.height, lv.num_disp,
                  std::vector<std::uint16_t>(lv.data.size(), 0)};
    for (int y = 0; y < lv.height; ++y)
        for (int x = 0; x < lv.width; ++x)
            for (int d = 0; d < lv.num_disp; ++d)
                rv.at(x, y, d) = lv.at(std::min(x + d, lv.width - 1), y, d);
    return rv;
}

namespace {

constexpr std::array<PathDir, 8> kAllDirs = {{{-1, 0},
                                              {1, 0},
                                              {0, -1},
                                              {0, 1},
                                              {-1, -1},
                                              {1, -1},
                                              {-1, 1},
                                              {1, 1}}};

// One aggregation pass along `dir`, accumulated into `sum`.
void aggregate_one_path(const CostVolume& vol, PathDir dir, std::uint16_t p1,
                        std::uint16_t p2, AggregatedVolume& sum) {
    const int w = vol.width, h = vol.height, D = vol.num_disp;
    const auto& k = simd::kernels();

    // Visit order guaranteeing the predecessor p - dir is already done.
    const bool reverse_y = dir.dy < 0;
    const bool reverse_x = dir.dx < 0;

    // L values for the previous visited row (vertical/diagonal paths) and
    // the current row.
    std::vector<std::uint16_t> prev_row(static_cast<std::size_t>(w) * D, 0);
    std::vector<std::uint16_t> cur_row(static_cast<std::size_t>(w) * D, 0);
    std::vector<std::uint16_t> prev_row_min(w, 0);
    std::vector<std::uint16_t> cur_row_min(w, 0);

    for (int yi = 0; yi < h; ++yi) {
        const int y = reverse_y ? h - 1 - yi : yi;
        for (int xi = 0; xi < w; ++xi) {
            const int x = reverse_x ? w - 1 - xi : xi;
            const std::uint16_t* cost = vol.cell(x, y);
            std::uint16_t* L = cur_row.data() + static_cast<std::size_t>(x) * D;

            const int px = x - dir.dx;
            const int py = y - dir.dy;
            const std::uint16_t* prevL = nullptr;
            std::uint16_t prev_min = 0;
            if (px >= 0 && px < w && py >= 0 && py < h) {
                if (dir.dy == 0) {
                    prevL = cur_row.data() + static_cast<std::size_t>(px) * D;
                    prev_min = cur_row_min[px];
                } else if (py != y) {
                    prevL = prev_row.data() + static_cast<std::size_t>(px) * D;
                    prev_min = prev_row_min[px];
                }
            }

            if (prevL) {
                cur_row_min[x] = k.sgbm_path_step_u16(cost, prevL, D, p1, p2, prev_min, L);
            } else {
                // Path starts at the border: L = C.
                std::copy(cost, cost + D, L);
                std::uint16_t m = 0xFFFF;
                for (int d = 0; d < D; ++d) m = std::min(m, L[d]);
                cur_row_min[x] = m;
            }
            k.accumulate_u16_u32(
                sum.data.data() + (static_cast<std::size_t>(y) * w + x) * D, L, D);
        }
        std::swap(prev_row, cur_row);
        std::swap(prev_row_min, cur_row_min);
    }
}

}  // namespace

AggregatedVolume aggregate_paths(const CostVolume& vol, const MatchParams& params,
                                 std::span<const PathDir> dirs) {
    AggregatedVolume sum{vol.width, vol.height, vol.num_disp,
                         std::vector<std::uint32_t>(vol.data.size(), 0)};
    const auto p1 = static_cast<std::uint16_t>(params.resolved_p1());
    const auto p2 = static_cast<std::uint16_t>(params.resolved_p2());
    for (const auto dir : dirs) aggregate_one_path(vol, dir, p1, p2, sum);
    return sum;
}

AggregatedVolume aggregate_paths(const CostVolume& vol, const MatchParams& params) {
    return aggregate_paths(vol, params,
                           std::span<const PathDir>(kAllDirs.data(),
                                                    static_cast<std::size_t>(params.num_paths)));
}

namespace {

// Integer winner-take-all used for the right view of the LR check.
std::vector<int> integer_wta(const AggregatedVolume& vol) {
    std::vector<int> best(static_cast<std::size_t>(vol.width) * vol.height, 0);
    for (int y = 0; y < vol.height; ++y)
        for (int x = 0; x < vol.width; ++x) {
            const std::uint32_t* c = vol.cell(x, y);
            int arg = 0;
            for (int d = 1; d < vol.num_disp; ++d)
                if (c[d] < c[arg]) arg = d;
            best[static_cast<std::size_t>(y) * vol.width + x] = arg;
        }
    return best;
}

}  // namespace

DisparityMap select_disparity(const AggregatedVolume& vol, const MatchParams& params,
                              const AggregatedVolume* right_volume) {
    const int w = vol.width, h = vol.height, D = vol.num_disp;
    DisparityMap map{FloatImage(w, h, 0.0f), MaskImage(w, h, kMaskInvalid)};

    std::vector<int> right_best;
    if (right_volume && params.lr_max_diff >= 0) right_best = integer_wta(*right_volume);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::uint32_t* c = vol.cell(x, y);
            int best = 0;
            for (int d = 1; d < D; ++d)
                if (c[d] < c[best]) best = d;

            // Sub-pixel parabola through (d-1, d, d+1).
            double disp = best;
            if (best > 0 && best + 1 < D) {
                const double cm = c[best - 1], c0 = c[best], cp = c[best + 1];
                const double denom = cm + cp - 2.0 * c0;
                if (denom > 1e-12) disp = best + (cm - cp) / (2.0 * denom);
            }
            map.values.at(x, y) = static_cast<float>(disp);

            if (x < params.max_disparity) continue;  // left border band

            // Uniqueness: some far-away candidate is nearly as good.
            bool unique = true;
            const std::uint64_t thresh =
                static_cast<std::uint64_t>(c[best]) * (100 + params.uniqueness_ratio);
            for (int d = 0; d < D; ++d) {
                if (std::abs(d - best) <= 1) continue;
                if (static_cast<std::uint64_t>(c[d]) * 100 <= thresh) {
                    unique = false;
                    break;
                }
            }
            if (!unique) continue;

            if (!right_best.empty()) {
                const int xr = x - best;
                if (xr >= 0) {
                    const int dr = right_best[static_cast<std::size_t>(y) * w + xr];
                    if (std::abs(dr - best) > params.lr_max_diff) continue;
                }
            }
            map.validity.at(x, y) = kMaskValid;
        }
    }
    return map;
}

DisparityMap compute_disparity(const GrayImage& left, const GrayImage& right,
                               const MatchParams& params) {
    if (!left.same_size(right)) raise(ErrorCategory::config, "stereo pair size mismatch");
    const CostVolume vol = build_cost_volume(left, right, params);
    const AggregatedVolume agg = aggregate_paths(vol, params);
    if (params.lr_max_diff >= 0) {
        const CostVolume rvol = mirror_cost_volume(vol);
        const AggregatedVolume ragg = aggregate_paths(rvol, params);
        return select_disparity(agg, params, &ragg);
    }
    return select_disparity(agg, params);
}

}  // namespace corridor::stereo
