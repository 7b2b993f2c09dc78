#include "gridbench/image.hpp"

#include <algorithm>
#include <cstdio>

#include "gridbench/font.hpp"

namespace gridbench {

Rgb rgb_from_hex(std::string_view hex) {
  if (!hex.empty() && hex.front() == '#') hex.remove_prefix(1);
  if (hex.size() != 6) throw std::invalid_argument("rgb_from_hex: want rrggbb");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("rgb_from_hex: bad hex digit");
  };
  auto byte = [&](int i) { return std::uint8_t(nibble(hex[i]) * 16 + nibble(hex[i + 1])); };
  return {byte(0), byte(2), byte(4)};
}

std::string rgb_to_hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

RasterImage::RasterImage(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("RasterImage: dimensions must be positive");
  pixels_.resize(std::size_t(width) * height * 3);
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

void RasterImage::fill_rect(int x, int y, int w, int h, Rgb c) {
  int x0 = std::max(x, 0), y0 = std::max(y, 0);
  int x1 = std::min(x + w, width_), y1 = std::min(y + h, height_);
  for (int yy = y0; yy < y1; ++yy)
    for (int xx = x0; xx < x1; ++xx) set(xx, yy, c);
}

void draw_glyph(RasterImage& img, char c, int x, int y, int scale, Rgb color) {
  auto rows = glyph_rows(c);
  for (int r = 0; r < kGlyphRows; ++r)
    for (int col = 0; col < kGlyphCols; ++col)
      if (rows[r] & (1u << (kGlyphCols - 1 - col)))
        img.fill_rect(x + col * scale, y + r * scale, scale, scale, color);
}

void draw_text(RasterImage& img, std::string_view text, int x, int y, int font_size, Rgb color) {
  FontMetrics fm = font_metrics(font_size);
  for (char c : text) {
    draw_glyph(img, c, x, y, fm.scale, color);
    x += fm.advance;
  }
}

}  // namespace gridbench
