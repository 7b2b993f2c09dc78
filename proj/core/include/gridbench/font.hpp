#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridbench {

/// Fixed-advance bitmap glyphs: digits, minus, decimal point, space. Each
/// glyph is a 5x7 bit pattern scaled by an integer factor, so rendering is
/// identical on every platform.
inline constexpr int kGlyphCols = 5;
inline constexpr int kGlyphRows = 7;

struct FontMetrics {
  int scale = 1;
  int advance = kGlyphCols + 1;  // per character, including inter-glyph gap
  int glyph_width = kGlyphCols;
  int glyph_height = kGlyphRows;
};

/// scale = max(1, font_size / 8).
FontMetrics font_metrics(int font_size);

bool glyph_supported(char c);

/// 7 rows, 5 bits each, most significant bit leftmost. Throws on glyphs
/// outside the supported set.
std::span<const std::uint8_t, kGlyphRows> glyph_rows(char c);

/// Width of a token under the fixed advance: advance * character count.
int measure_token(std::string_view token, int font_size);

struct TextMeasure {
  std::vector<int> widths;
  int glyph_height = 0;
};

TextMeasure measure_text(std::span<const std::string> tokens, int font_size);

}  // namespace gridbench
