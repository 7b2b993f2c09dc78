#include "gridbench/font.hpp"

#include <stdexcept>

namespace gridbench {

namespace {

// clang-format off
constexpr std::array<std::uint8_t, kGlyphRows> kDigits[10] = {
    {0b01110, 0b10001, 0b10011, 0b10101, 0b11001, 0b10001, 0b01110},  // 0
    {0b00100, 0b01100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110},  // 1
    {0b01110, 0b10001, 0b00001, 0b00010, 0b00100, 0b01000, 0b11111},  // 2
    {0b11111, 0b00001, 0b00010, 0b00110, 0b00001, 0b10001, 0b01110},  // 3
    {0b00010, 0b00110, 0b01010, 0b10010, 0b11111, 0b00010, 0b00010},  // 4
    {0b11111, 0b10000, 0b11110, 0b00001, 0b00001, 0b10001, 0b01110},  // 5
    {0b00110, 0b01000, 0b10000, 0b11110, 0b10001, 0b10001, 0b01110},  // 6
    {0b11111, 0b00001, 0b00010, 0b00100, 0b01000, 0b01000, 0b01000},  // 7
    {0b01110, 0b10001, 0b10001, 0b01110, 0b10001, 0b10001, 0b01110},  // 8
    {0b01110, 0b10001, 0b10001, 0b01111, 0b00001, 0b00010, 0b01100},  // 9
};
constexpr std::array<std::uint8_t, kGlyphRows> kMinus = {0, 0, 0, 0b11111, 0, 0, 0};
constexpr std::array<std::uint8_t, kGlyphRows> kDot = {0, 0, 0, 0, 0, 0b01100, 0b01100};
constexpr std::array<std::uint8_t, kGlyphRows> kSpace = {0, 0, 0, 0, 0, 0, 0};
// clang-format on

}  // namespace

FontMetrics font_metrics(int font_size) {
  if (font_size < 1) throw std::invalid_argument("font_metrics: font size must be positive");
  int scale = font_size / 8;
  if (scale < 1) scale = 1;
  return {scale, (kGlyphCols + 1) * scale, kGlyphCols * scale, kGlyphRows * scale};
}

bool glyph_supported(char c) {
  return (c >= '0' && c <= '9') || c == '-' || c == '.' || c == ' ';
}

std::span<const std::uint8_t, kGlyphRows> glyph_rows(char c) {
  if (c >= '0' && c <= '9') return kDigits[c - '0'];
  if (c == '-') return kMinus;
  if (c == '.') return kDot;
  if (c == ' ') return kSpace;
  throw std::invalid_argument(std::string("unsupported glyph: '") + c + "'");
}

int measure_token(std::string_view token, int font_size) {
  FontMetrics fm = font_metrics(font_size);
  for (char c : token)
    if (!glyph_supported(c)) throw std::invalid_argument(std::string("unsupported glyph: '") + c + "'");
  return fm.advance * int(token.size());
}

TextMeasure measure_text(std::span<const std::string> tokens, int font_size) {
  TextMeasure out;
  out.glyph_height = font_metrics(font_size).glyph_height;
  out.widths.reserve(tokens.size());
  for (const auto& t : tokens) out.widths.push_back(measure_token(t, font_size));
  return out;
}

}  // namespace gridbench
