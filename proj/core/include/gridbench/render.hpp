#pragma once

#include <string>
#include <string_view>

#include "gridbench/datagen.hpp"
#include "gridbench/image.hpp"
#include "gridbench/types.hpp"

namespace gridbench {

enum class CellAlign { left, center, right };

std::string_view to_string(CellAlign a);
CellAlign cell_align_from_string(std::string_view s);

struct MatrixRenderSpec {
  int font_size = 16;
  int cell_padding_x = 6;
  int cell_padding_y = 4;
  int margin = 12;
  int bracket_gap = 4;
  int bracket_width = 6;
  int bracket_thickness = 2;
  CellAlign cell_align = CellAlign::right;
  Rgb background_color = kWhite;
  Rgb foreground_color = kBlack;

  void validate() const;
};

struct GridRenderSpec {
  int font_size = 16;
  int cell_padding = 6;
  int grid_thickness = 2;
  int margin = 12;
  Rgb background_color = kWhite;
  Rgb foreground_color = kBlack;

  void validate() const;
};

struct FlowRenderSpec {
  int font_size = 16;
  int margin = 12;
  int line_gap = 4;
  int word_gap_spaces = 1;
  Rgb background_color = kWhite;
  Rgb foreground_color = kBlack;

  void validate() const;
};

struct RenderSpecs {
  MatrixRenderSpec matrix;
  GridRenderSpec grid;
  FlowRenderSpec flow;
};

/// Bracketed matrix at natural size: per-column widths from the widest entry,
/// entries aligned within their column, three-segment square brackets.
RasterImage render_matrix(const Matrix& m, const MatrixRenderSpec& spec);

/// Uniform square cells with visible grid lines and centered 0/1 glyphs.
RasterImage render_grid(const Grid& g, const GridRenderSpec& spec);

/// Width render_matrix would produce for m, so a layout-disrupted rendering
/// can occupy the same horizontal extent as the native one.
int derive_flow_canvas_width(const Matrix& m, const MatrixRenderSpec& spec);

/// Serialized tokens greedily wrapped inside a fixed-width canvas. Throws
/// when a token cannot fit the usable width.
RasterImage render_flow(std::string_view serialized_text, int canvas_width,
                        const FlowRenderSpec& spec);

enum class RenderMode { matrix, grid, flow };

std::string_view to_string(RenderMode m);
RenderMode render_mode_from_string(std::string_view s);

/// Native presentation for a task: matrices render as matrices, life boards
/// as grids.
RenderMode native_mode(TaskKind task);

/// Renders an instance input under the requested mode. Flow mode serializes
/// the input and wraps it in a canvas whose width is derived from the native
/// layout.
RasterImage render_input(const TaskInstance& inst, RenderMode mode, const RenderSpecs& specs);

}  // namespace gridbench
