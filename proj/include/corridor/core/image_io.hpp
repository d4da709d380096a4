#pragma once

#include <filesystem>

#include "corridor/core/image.hpp"

namespace corridor {

/// 8-bit binary portable graymap, magic "P5", maxval 255.
void write_pgm(const GrayImage& img, const std::filesystem::path& path);
GrayImage read_pgm(const std::filesystem::path& path);

/// Grayscale portable float map, magic "Pf", scale -1.0 (little-endian),
/// rows stored bottom-to-top per the PFM convention.
void write_pfm(const FloatImage& img, const std::filesystem::path& path);
FloatImage read_pfm(const std::filesystem::path& path);

}  // namespace corridor
