#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "corridor/core/error.hpp"

namespace corridor {

/// Row-major 2D raster. Value semantics; (x, y) with y growing downward.
template <typename T>
class Image {
public:
    Image() = default;
    Image(int width, int height, T fill = T{})
        : width_(width), height_(height),
          data_(static_cast<std::size_t>(width) * height, fill) {
        if (width <= 0 || height <= 0)
            raise(ErrorCategory::contract, "image dimensions must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return data_.empty(); }
    std::size_t pixel_count() const { return data_.size(); }

    T* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_; }
    const T* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * width_; }

    T& at(int x, int y) { return row(y)[x]; }
    const T& at(int x, int y) const { return row(y)[x]; }

    /// at() with coordinates clamped to the border.
    const T& at_clamped(int x, int y) const {
        return at(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
    }

    std::span<T> pixels() { return data_; }
    std::span<const T> pixels() const { return data_; }

    template <typename U>
    bool same_size(const Image<U>& o) const {
        return width_ == o.width() && height_ == o.height();
    }

    void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

    bool operator==(const Image&) const = default;

private:
    int width_ = 0, height_ = 0;
    std::vector<T> data_;
};

using GrayImage = Image<std::uint8_t>;
using FloatImage = Image<float>;
/// Validity mask: 255 = valid, 0 = invalid.
using MaskImage = Image<std::uint8_t>;

constexpr std::uint8_t kMaskValid = 255;
constexpr std::uint8_t kMaskInvalid = 0;

}  // namespace corridor
