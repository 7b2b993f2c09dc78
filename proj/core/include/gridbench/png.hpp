#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gridbench/image.hpp"

namespace gridbench {

/// 8-bit RGB PNG bytes (color type 2, no interlace, filter 0 scanlines).
std::vector<std::uint8_t> encode_png(const RasterImage& img);

void write_png(const std::filesystem::path& path, const RasterImage& img);

}  // namespace gridbench
