#include "gridbench/render.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "gridbench/font.hpp"
#include "gridbench/textio.hpp"

namespace gridbench {

std::string_view to_string(CellAlign a) {
  switch (a) {
    case CellAlign::left: return "left";
    case CellAlign::center: return "center";
    case CellAlign::right: return "right";
  }
  throw std::logic_error("bad CellAlign");
}

CellAlign cell_align_from_string(std::string_view s) {
  if (s == "left") return CellAlign::left;
  if (s == "center") return CellAlign::center;
  if (s == "right") return CellAlign::right;
  throw std::invalid_argument("unknown cell_align: " + std::string(s));
}

void MatrixRenderSpec::validate() const {
  if (font_size < 1) throw std::invalid_argument("matrix spec: font_size must be positive");
  if (cell_padding_x < 0 || cell_padding_y < 0 || margin < 0 || bracket_gap < 0 ||
      bracket_width < 0 || bracket_thickness < 0)
    throw std::invalid_argument("matrix spec: pixel fields must be nonnegative");
  if (bracket_thickness > bracket_width)
    throw std::invalid_argument("matrix spec: bracket_thickness exceeds bracket_width");
}

void GridRenderSpec::validate() const {
  if (font_size < 1) throw std::invalid_argument("grid spec: font_size must be positive");
  if (cell_padding < 0 || grid_thickness < 0 || margin < 0)
    throw std::invalid_argument("grid spec: pixel fields must be nonnegative");
}

void FlowRenderSpec::validate() const {
  if (font_size < 1) throw std::invalid_argument("flow spec: font_size must be positive");
  if (margin < 0 || line_gap < 0)
    throw std::invalid_argument("flow spec: pixel fields must be nonnegative");
  if (word_gap_spaces < 1)
    throw std::invalid_argument("flow spec: word_gap_spaces must be at least 1");
}

namespace {

struct MatrixLayout {
  FontMetrics fm;
  std::vector<std::string> texts;   // row-major entry strings
  std::vector<int> col_widths;
  int content_w = 0;
  int content_h = 0;
  int total_w = 0;
  int total_h = 0;
};

MatrixLayout matrix_layout(const Matrix& m, const MatrixRenderSpec& spec) {
  spec.validate();
  MatrixLayout layout;
  layout.fm = font_metrics(spec.font_size);
  layout.texts.reserve(std::size_t(m.rows()) * m.cols());
  layout.col_widths.assign(m.cols(), 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      std::string text = format_number(m(i, j));
      layout.col_widths[j] =
          std::max(layout.col_widths[j], measure_token(text, spec.font_size));
      layout.texts.push_back(std::move(text));
    }
  for (int w : layout.col_widths) layout.content_w += w;
  layout.content_w += (m.cols() - 1) * spec.cell_padding_x;
  layout.content_h =
      m.rows() * layout.fm.glyph_height + (m.rows() - 1) * spec.cell_padding_y;
  layout.total_w =
      2 * spec.margin + 2 * (spec.bracket_width + spec.bracket_gap) + layout.content_w;
  layout.total_h = 2 * spec.margin + layout.content_h;
  return layout;
}

}  // namespace

RasterImage render_matrix(const Matrix& m, const MatrixRenderSpec& spec) {
  MatrixLayout layout = matrix_layout(m, spec);
  RasterImage img(layout.total_w, layout.total_h, spec.background_color);
  const Rgb fg = spec.foreground_color;
  const int t = spec.bracket_thickness;

  // Brackets: vertical stroke plus top and bottom bars.
  int y0 = spec.margin;
  int left_x = spec.margin;
  int right_x = layout.total_w - spec.margin - spec.bracket_width;
  img.fill_rect(left_x, y0, t, layout.content_h, fg);
  img.fill_rect(left_x, y0, spec.bracket_width, t, fg);
  img.fill_rect(left_x, y0 + layout.content_h - t, spec.bracket_width, t, fg);
  img.fill_rect(right_x + spec.bracket_width - t, y0, t, layout.content_h, fg);
  img.fill_rect(right_x, y0, spec.bracket_width, t, fg);
  img.fill_rect(right_x, y0 + layout.content_h - t, spec.bracket_width, t, fg);

  int content_x = spec.margin + spec.bracket_width + spec.bracket_gap;
  for (int i = 0; i < m.rows(); ++i) {
    int y = spec.margin + i * (layout.fm.glyph_height + spec.cell_padding_y);
    int x = content_x;
    for (int j = 0; j < m.cols(); ++j) {
      const std::string& text = layout.texts[std::size_t(i) * m.cols() + j];
      int w = layout.fm.advance * int(text.size());
      int offset = 0;
      if (spec.cell_align == CellAlign::right)
        offset = layout.col_widths[j] - w;
      else if (spec.cell_align == CellAlign::center)
        offset = (layout.col_widths[j] - w) / 2;
      draw_text(img, text, x + offset, y, spec.font_size, fg);
      x += layout.col_widths[j] + spec.cell_padding_x;
    }
  }
  return img;
}

RasterImage render_grid(const Grid& g, const GridRenderSpec& spec) {
  spec.validate();
  FontMetrics fm = font_metrics(spec.font_size);
  const int side = fm.glyph_height + 2 * spec.cell_padding;
  const int t = spec.grid_thickness;
  const int grid_w = (g.cols() + 1) * t + g.cols() * side;
  const int grid_h = (g.rows() + 1) * t + g.rows() * side;
  RasterImage img(2 * spec.margin + grid_w, 2 * spec.margin + grid_h, spec.background_color);
  const Rgb fg = spec.foreground_color;

  for (int k = 0; k <= g.cols(); ++k)
    img.fill_rect(spec.margin + k * (t + side), spec.margin, t, grid_h, fg);
  for (int k = 0; k <= g.rows(); ++k)
    img.fill_rect(spec.margin, spec.margin + k * (t + side), grid_w, t, fg);

  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) {
      int cx = spec.margin + t + j * (side + t);
      int cy = spec.margin + t + i * (side + t);
      char glyph = char('0' + g(i, j));
      draw_glyph(img, glyph, cx + (side - fm.glyph_width) / 2, cy + spec.cell_padding,
                 fm.scale, fg);
    }
  return img;
}

int derive_flow_canvas_width(const Matrix& m, const MatrixRenderSpec& spec) {
  return matrix_layout(m, spec).total_w;
}

RasterImage render_flow(std::string_view serialized_text, int canvas_width,
                        const FlowRenderSpec& spec) {
  spec.validate();
  FontMetrics fm = font_metrics(spec.font_size);
  const int usable = canvas_width - 2 * spec.margin;
  const int gap = spec.word_gap_spaces * fm.advance;

  std::vector<std::string> tokens;
  {
    std::istringstream in{std::string(serialized_text)};
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
  }

  // Greedy wrap; a token never splits across lines.
  struct Placement {
    std::string text;
    int x = 0;
    int line = 0;
  };
  std::vector<Placement> placements;
  int line = 0, x = 0;
  for (auto& tok : tokens) {
    int w = measure_token(tok, spec.font_size);
    if (w > usable)
      throw std::invalid_argument("render_flow: token wider than usable canvas width: " + tok);
    if (x > 0 && x + gap + w > usable) {
      ++line;
      x = 0;
    }
    if (x > 0) x += gap;
    placements.push_back({std::move(tok), x, line});
    x += w;
  }

  int lines = placements.empty() ? 1 : line + 1;
  int height = 2 * spec.margin + lines * fm.glyph_height + (lines - 1) * spec.line_gap;
  RasterImage img(canvas_width, height, spec.background_color);
  for (const auto& p : placements) {
    int y = spec.margin + p.line * (fm.glyph_height + spec.line_gap);
    draw_text(img, p.text, spec.margin + p.x, y, spec.font_size, spec.foreground_color);
  }
  return img;
}

std::string_view to_string(RenderMode m) {
  switch (m) {
    case RenderMode::matrix: return "matrix";
    case RenderMode::grid: return "grid";
    case RenderMode::flow: return "flow";
  }
  throw std::logic_error("bad RenderMode");
}

RenderMode render_mode_from_string(std::string_view s) {
  if (s == "matrix") return RenderMode::matrix;
  if (s == "grid") return RenderMode::grid;
  if (s == "flow") return RenderMode::flow;
  throw std::invalid_argument("unknown render mode: " + std::string(s));
}

RenderMode native_mode(TaskKind task) {
  return task == TaskKind::life ? RenderMode::grid : RenderMode::matrix;
}

RasterImage render_input(const TaskInstance& inst, RenderMode mode, const RenderSpecs& specs) {
  switch (mode) {
    case RenderMode::matrix:
      if (!std::holds_alternative<Matrix>(inst.input))
        throw std::invalid_argument("render_input: matrix mode needs a matrix input");
      return render_matrix(std::get<Matrix>(inst.input), specs.matrix);
    case RenderMode::grid:
      if (!std::holds_alternative<Grid>(inst.input))
        throw std::invalid_argument("render_input: grid mode needs a grid input");
      return render_grid(std::get<Grid>(inst.input), specs.grid);
    case RenderMode::flow: {
      int width = std::holds_alternative<Matrix>(inst.input)
                      ? derive_flow_canvas_width(std::get<Matrix>(inst.input), specs.matrix)
                      : render_grid(std::get<Grid>(inst.input), specs.grid).width();
      return render_flow(serialize_input(inst), width, specs.flow);
    }
  }
  throw std::logic_error("bad RenderMode");
}

}  // namespace gridbench
