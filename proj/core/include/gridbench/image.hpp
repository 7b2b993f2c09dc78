#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace gridbench {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kBlack{0, 0, 0};

/// Parses "#rrggbb" (leading '#' optional).
Rgb rgb_from_hex(std::string_view hex);
std::string rgb_to_hex(Rgb c);

/// Row-major 8-bit RGB raster.
class RasterImage {
 public:
  RasterImage(int width, int height, Rgb fill = kWhite);

  int width() const { return width_; }
  int height() const { return height_; }
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  Rgb at(int x, int y) const {
    std::size_t i = index(x, y);
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
  }
  void set(int x, int y, Rgb c) {
    std::size_t i = index(x, y);
    pixels_[i] = c.r;
    pixels_[i + 1] = c.g;
    pixels_[i + 2] = c.b;
  }

  /// Clipped to the image bounds.
  void fill_rect(int x, int y, int w, int h, Rgb c);

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    if (x < 0 || y < 0 || x >= width_ || y >= height_)
      throw std::out_of_range("RasterImage: pixel out of bounds");
    return (std::size_t(y) * width_ + x) * 3;
  }
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Draws one glyph with its top-left corner at (x, y).
void draw_glyph(RasterImage& img, char c, int x, int y, int scale, Rgb color);

/// Fixed-advance text run starting at (x, y).
void draw_text(RasterImage& img, std::string_view text, int x, int y, int font_size, Rgb color);

}  // namespace gridbench
