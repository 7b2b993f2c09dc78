#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <zlib.h>

#include "gridbench/font.hpp"
#include "gridbench/png.hpp"
#include "gridbench/render.hpp"
#include "gridbench/tasks.hpp"
#include "gridbench/textio.hpp"

using namespace gridbench;

TEST_CASE("font metrics scale with font size") {
  FontMetrics fm8 = font_metrics(8);
  CHECK(fm8.scale == 1);
  CHECK(fm8.advance == 6);
  CHECK(fm8.glyph_height == 7);

  FontMetrics fm16 = font_metrics(16);
  CHECK(fm16.scale == 2);
  CHECK(fm16.advance == 12);
  CHECK(fm16.glyph_height == 14);

  CHECK(font_metrics(4).scale == 1);  // never below 1
}

TEST_CASE("measure_token is advance times length") {
  CHECK(measure_token("12", 16) == 2 * font_metrics(16).advance);
  CHECK(measure_token("", 16) == 0);
  CHECK(measure_token("-3.5", 8) == 4 * 6);
}

TEST_CASE("token widths are additive over concatenation") {
  CHECK(measure_token("123", 16) + measure_token("45", 16) == measure_token("12345", 16));
}

TEST_CASE("measure_text rejects unsupported glyphs") {
  CHECK_THROWS_AS(measure_token("1a2", 16), std::invalid_argument);
  std::vector<std::string> tokens = {"12", "-3"};
  auto measure = measure_text(tokens, 16);
  CHECK(measure.widths == std::vector<int>{24, 24});
  CHECK(measure.glyph_height == 14);
}

TEST_CASE("render_matrix 1x1 width follows the layout formula") {
  MatrixRenderSpec spec;
  Matrix m(1, 1, 5.0);
  RasterImage img = render_matrix(m, spec);
  int expected_w = 2 * spec.margin + 2 * (spec.bracket_width + spec.bracket_gap) +
                   measure_token("5", spec.font_size);
  int expected_h = 2 * spec.margin + font_metrics(spec.font_size).glyph_height;
  CHECK(img.width() == expected_w);
  CHECK(img.height() == expected_h);
}

TEST_CASE("render_matrix dimensions for a general matrix") {
  MatrixRenderSpec spec;
  Matrix m = Matrix::from_rows({{1, 22}, {333, 4}});
  RasterImage img = render_matrix(m, spec);
  int adv = font_metrics(spec.font_size).advance;
  int col0 = 3 * adv, col1 = 2 * adv;
  CHECK(img.width() == 2 * spec.margin + 2 * (spec.bracket_width + spec.bracket_gap) + col0 +
                           spec.cell_padding_x + col1);
  CHECK(img.height() == 2 * spec.margin + 2 * font_metrics(spec.font_size).glyph_height +
                            spec.cell_padding_y);
}

TEST_CASE("widening one entry widens only its column") {
  MatrixRenderSpec spec;
  Matrix narrow = Matrix::from_rows({{5, 1}, {2, 3}});
  Matrix wide = Matrix::from_rows({{55, 1}, {2, 3}});
  int adv = font_metrics(spec.font_size).advance;
  CHECK(render_matrix(wide, spec).width() == render_matrix(narrow, spec).width() + adv);
}

TEST_CASE("render_matrix is deterministic") {
  Rng rng(31);
  Matrix m = random_transpose_input(6, rng);
  MatrixRenderSpec spec;
  CHECK(render_matrix(m, spec) == render_matrix(m, spec));
}

TEST_CASE("render_matrix honors colors") {
  MatrixRenderSpec spec;
  spec.background_color = rgb_from_hex("#112233");
  Matrix m(1, 1, 8.0);
  RasterImage img = render_matrix(m, spec);
  CHECK(img.at(0, 0) == Rgb{0x11, 0x22, 0x33});
}

TEST_CASE("render_grid dimensions follow the layout formula") {
  GridRenderSpec spec;
  Grid g(4, 4);
  RasterImage img = render_grid(g, spec);
  int side = font_metrics(spec.font_size).glyph_height + 2 * spec.cell_padding;
  int expected = 2 * spec.margin + 5 * spec.grid_thickness + 4 * side;
  CHECK(img.width() == expected);
  CHECK(img.height() == expected);
}

TEST_CASE("grid image size is content-independent") {
  GridRenderSpec spec;
  RasterImage dead = render_grid(Grid(5, 5, 0), spec);
  RasterImage live = render_grid(Grid(5, 5, 1), spec);
  CHECK(dead.width() == live.width());
  CHECK(dead.height() == live.height());
  CHECK_FALSE(dead == live);
}

TEST_CASE("render_grid is deterministic") {
  Rng rng(77);
  Grid g = random_life_grid(6, rng);
  GridRenderSpec spec;
  CHECK(render_grid(g, spec) == render_grid(g, spec));
}

TEST_CASE("derive_flow_canvas_width equals render_matrix width") {
  Rng rng(8);
  MatrixRenderSpec spec;
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m = random_transpose_input(int(rng.uniform_int(1, 10)), rng);
    CHECK(derive_flow_canvas_width(m, spec) == render_matrix(m, spec).width());
  }
}

TEST_CASE("flow canvas width grows with entry width") {
  MatrixRenderSpec spec;
  Matrix narrow = Matrix::from_rows({{5}});
  Matrix wide = Matrix::from_rows({{55}});
  CHECK(derive_flow_canvas_width(wide, spec) > derive_flow_canvas_width(narrow, spec));
  CHECK(derive_flow_canvas_width(narrow, spec) == render_matrix(narrow, spec).width());
}

TEST_CASE("render_flow single line height") {
  FlowRenderSpec spec;
  RasterImage img = render_flow("1 2 3", 400, spec);
  CHECK(img.height() == 2 * spec.margin + font_metrics(spec.font_size).glyph_height);
  CHECK(img.width() == 400);
}

TEST_CASE("halving the canvas doubles the line count for uniform tokens") {
  FlowRenderSpec spec;
  FontMetrics fm = font_metrics(spec.font_size);
  // 8 two-character tokens, 4 per line at the wide width.
  std::string text = "11 22 33 44 55 66 77 88";
  int token_w = 2 * fm.advance;
  int gap = spec.word_gap_spaces * fm.advance;
  int wide = 2 * spec.margin + 4 * token_w + 3 * gap;
  int narrow = 2 * spec.margin + 2 * token_w + gap;
  auto lines = [&](int width) {
    int h = render_flow(text, width, spec).height();
    return (h - 2 * spec.margin + spec.line_gap) / (fm.glyph_height + spec.line_gap);
  };
  CHECK(lines(wide) == 2);
  CHECK(lines(narrow) == 4);
}

TEST_CASE("render_flow never splits a token and rejects oversized tokens") {
  FlowRenderSpec spec;
  int usable = 5 * font_metrics(spec.font_size).advance;
  CHECK_THROWS_AS(render_flow("123456", usable + 2 * spec.margin, spec),
                  std::invalid_argument);
  // Exactly fitting token is fine.
  RasterImage img = render_flow("12345", usable + 2 * spec.margin, spec);
  CHECK(img.width() == usable + 2 * spec.margin);
}

TEST_CASE("render_flow is deterministic") {
  FlowRenderSpec spec;
  CHECK(render_flow("1 0 1 0 1 0 1 0", 200, spec) == render_flow("1 0 1 0 1 0 1 0", 200, spec));
}

TEST_CASE("render specs validate their invariants") {
  MatrixRenderSpec bad;
  bad.bracket_thickness = bad.bracket_width + 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  FlowRenderSpec flow;
  flow.word_gap_spaces = 0;
  CHECK_THROWS_AS(flow.validate(), std::invalid_argument);
  GridRenderSpec grid;
  grid.margin = -1;
  CHECK_THROWS_AS(grid.validate(), std::invalid_argument);
}

TEST_CASE("render_input dispatches by mode and task") {
  TaskInstance inst = generate_instance(TaskKind::life, 4, 3);
  RenderSpecs specs;
  CHECK(native_mode(TaskKind::life) == RenderMode::grid);
  CHECK(native_mode(TaskKind::transpose) == RenderMode::matrix);
  RasterImage grid_img = render_input(inst, RenderMode::grid, specs);
  CHECK(grid_img.width() > 0);
  CHECK_THROWS_AS(render_input(inst, RenderMode::matrix, specs), std::invalid_argument);

  TaskInstance tr = generate_instance(TaskKind::transpose, 4, 3);
  RasterImage flow_img = render_input(tr, RenderMode::flow, specs);
  CHECK(flow_img.width() ==
        derive_flow_canvas_width(std::get<Matrix>(tr.input), specs.matrix));
}

namespace {

// Pulls the IDAT payload back out and inflates it to raw scanlines.
std::vector<std::uint8_t> inflate_idat(const std::vector<std::uint8_t>& png, int width,
                                       int height) {
  std::vector<std::uint8_t> idat;
  std::size_t pos = 8;
  while (pos + 8 <= png.size()) {
    std::uint32_t len = (std::uint32_t(png[pos]) << 24) | (std::uint32_t(png[pos + 1]) << 16) |
                        (std::uint32_t(png[pos + 2]) << 8) | png[pos + 3];
    std::string type(png.begin() + pos + 4, png.begin() + pos + 8);
    if (type == "IDAT")
      idat.insert(idat.end(), png.begin() + pos + 8, png.begin() + pos + 8 + len);
    pos += 12 + len;
  }
  uLongf raw_len = uLongf((std::size_t(width) * 3 + 1) * height);
  std::vector<std::uint8_t> raw(raw_len);
  REQUIRE(uncompress(raw.data(), &raw_len, idat.data(), uLong(idat.size())) == Z_OK);
  raw.resize(raw_len);
  return raw;
}

}  // namespace

TEST_CASE("png encoding holds the exact scanlines") {
  Rng rng(3);
  Grid g = random_life_grid(5, rng);
  GridRenderSpec spec;
  RasterImage img = render_grid(g, spec);
  auto png = encode_png(img);

  // Signature and IHDR dimensions.
  const std::uint8_t sig[8] = {137, 'P', 'N', 'G', 13, 10, 26, 10};
  for (int i = 0; i < 8; ++i) CHECK(png[i] == sig[i]);

  auto raw = inflate_idat(png, img.width(), img.height());
  std::size_t stride = std::size_t(img.width()) * 3;
  REQUIRE(raw.size() == (stride + 1) * std::size_t(img.height()));
  auto pixels = img.pixels();
  for (int y = 0; y < img.height(); ++y) {
    CHECK(raw[y * (stride + 1)] == 0);  // filter byte
    for (std::size_t i = 0; i < stride; ++i)
      CHECK(raw[y * (stride + 1) + 1 + i] == pixels[y * stride + i]);
  }
}

TEST_CASE("png bytes are identical across calls") {
  Matrix m = Matrix::from_rows({{1, 2}, {3, 4}});
  MatrixRenderSpec spec;
  CHECK(encode_png(render_matrix(m, spec)) == encode_png(render_matrix(m, spec)));
}
