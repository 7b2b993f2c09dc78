#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gridbench/evaluate.hpp"
#include "gridbench/image.hpp"

namespace gridbench {

/// Per-position error rates over an evaluation set, together with how many
/// records contributed at each position. Malformed records carry no mask and
/// do not enter.
struct ErrorHeatmap {
  TaskKind task = TaskKind::transpose;
  int size = 0;
  std::string label;  // condition or any caller-chosen tag
  int rows = 0;
  int cols = 0;
  std::vector<double> rates;   // row-major, in [0,1]
  std::vector<int> counts;     // samples per position

  double rate(int i, int j) const { return rates[std::size_t(i) * cols + j]; }
  double mean_rate() const;
};

/// Records must share one task, size and mask shape.
ErrorHeatmap cell_error_heatmap(std::span<const EvalRecord> records, std::string label);

/// Signed per-position difference a - b, in [-1, 1]. Positive cells mark
/// positions where condition a errs more than condition b.
struct HeatmapDiff {
  TaskKind task = TaskKind::transpose;
  int size = 0;
  std::string label_a;
  std::string label_b;
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  double value(int i, int j) const { return values[std::size_t(i) * cols + j]; }
};

HeatmapDiff heatmap_difference(const ErrorHeatmap& a, const ErrorHeatmap& b);

/// Monochrome ramp, white at 0 to black at 1.
Rgb sequential_color(double rate);

/// Two-hue diverging map on the fixed [-1, 1] scale: blue at -1, white at 0,
/// red at +1.
Rgb diverging_color(double value);

RasterImage heatmap_image(const ErrorHeatmap& hm, int cell_px = 24);
RasterImage heatmap_diff_image(const HeatmapDiff& diff, int cell_px = 24);

/// Exact textual form of the rates: one row per line, comma separated,
/// shortest digits that round-trip.
std::string heatmap_csv(std::span<const double> values, int rows, int cols);
std::vector<double> parse_rate_table(std::string_view csv, int* rows_out = nullptr,
                                     int* cols_out = nullptr);

std::string accuracy_csv(std::span<const AccuracyRow> rows);

struct ReportPaths {
  std::vector<std::filesystem::path> files;
};

/// PNG plus CSV per heatmap and difference, and the accuracy table.
ReportPaths export_report(std::span<const ErrorHeatmap> heatmaps,
                          std::span<const HeatmapDiff> diffs,
                          std::span<const AccuracyRow> accuracy,
                          const std::filesystem::path& out_dir, int cell_px = 24);

}  // namespace gridbench
