#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "corridor/core/image.hpp"

namespace corridor::stereo {

/// Semi-global block matching parameters. p1/p2 left unset resolve to the
/// usual 8*(2r+1)^2 and 32*(2r+1)^2.
struct MatchParams {
    int max_disparity = 64;  // exclusive upper bound
    int block_radius = 1;
    std::optional<int> p1;
    std::optional<int> p2;
    int num_paths = 4;  // 4 (axis-aligned) or 8 (adds diagonals)
    int uniqueness_ratio = 10;  // percent; see select_disparity
    int lr_max_diff = 1;        // px; negative disables the LR check

    int resolved_p1() const;
    int resolved_p2() const;
    /// Throws ErrorCategory::config on invalid combinations (including
    /// cost ranges that would not fit the u16 path accumulators).
    void validate(int image_width) const;
};

struct DisparityMap {
    FloatImage values;   // px, >= 0 where valid
    MaskImage validity;  // 255 valid / 0 invalid

    int width() const { return values.width(); }
    int height() const { return values.height(); }
    bool fully_valid() const;
    std::size_t valid_count() const;
};

/// H x W x D block-matching costs, disparity innermost.
struct CostVolume {
    int width = 0, height = 0, num_disp = 0;
    std::vector<std::uint16_t> data;

    std::uint16_t& at(int x, int y, int d) {
        return data[(static_cast<std::size_t>(y) * width + x) * num_disp + d];
    }
    std::uint16_t at(int x, int y, int d) const {
        return data[(static_cast<std::size_t>(y) * width + x) * num_disp + d];
    }
    const std::uint16_t* cell(int x, int y) const {
        return data.data() + (static_cast<std::size_t>(y) * width + x) * num_disp;
    }
};

/// Path-summed costs (u32: up to 8 u16 path terms per cell).
struct AggregatedVolume {
    int width = 0, height = 0, num_disp = 0;
    std::vector<std::uint32_t> data;

    std::uint32_t at(int x, int y, int d) const {
        return data[(static_cast<std::size_t>(y) * width + x) * num_disp + d];
    }
    const std::uint32_t* cell(int x, int y) const {
        return data.data() + (static_cast<std::size_t>(y) * width + x) * num_disp;
    }
};

/// Aggregation path direction; pixels are visited so that p - dir precedes p.
struct PathDir {
    int dx = 0, dy = 0;
};

/// Sum of absolute gray differences over the (2r+1)^2 block around (x, y)
/// in the left image and (x - d, y) in the right image; block coordinates
/// clamped to the borders. Reference implementation (scalar); the cost
/// volume builder must agree with it exactly.
std::uint32_t matching_cost(const GrayImage& left, const GrayImage& right, int x, int y,
                            int d, const MatchParams& params);

CostVolume build_cost_volume(const GrayImage& left, const GrayImage& right,
                             const MatchParams& params);

/// Mirrors a left cost volume into the right view's volume:
/// cost_R(x, d) = cost_L(min(x + d, W - 1), d). Used for the left-right
/// consistency check (block SAD is symmetric, so this is the swapped-image
/// cost volume).
CostVolume mirror_cost_volume(const CostVolume& left_volume);

AggregatedVolume aggregate_paths(const CostVolume& volume, const MatchParams& params);
AggregatedVolume aggregate_paths(const CostVolume& volume, const MatchParams& params,
                                 std::span<const PathDir> dirs);

/// Winner-take-all with parabola sub-pixel refinement. A pixel is
/// invalidated when (a) the best cost is not unique enough: there is some
/// d with |d - d*| > 1 and cost(d) * 100 <= best * (100 + uniqueness_ratio),
/// (b) the disparity disagrees with the right view's by more than
/// lr_max_diff (when right_volume is given), or (c) x < max_disparity.
DisparityMap select_disparity(const AggregatedVolume& volume, const MatchParams& params,
                              const AggregatedVolume* right_volume = nullptr);

/// build -> aggregate -> select, including the LR check when enabled.
DisparityMap compute_disparity(const GrayImage& left, const GrayImage& right,
                               const MatchParams& params);

}  // namespace corridor::stereo
