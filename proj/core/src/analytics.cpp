#include "gridbench/analytics.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "gridbench/png.hpp"

namespace gridbench {

double ErrorHeatmap::mean_rate() const {
  if (rates.empty()) return 0.0;
  return std::accumulate(rates.begin(), rates.end(), 0.0) / double(rates.size());
}

ErrorHeatmap cell_error_heatmap(std::span<const EvalRecord> records, std::string label) {
  ErrorHeatmap hm;
  hm.label = std::move(label);
  bool first = true;
  std::vector<long> error_sums;
  for (const auto& rec : records) {
    if (!rec.mask) continue;
    if (first) {
      hm.task = rec.task;
      hm.size = rec.size;
      hm.rows = rec.mask->rows;
      hm.cols = rec.mask->cols;
      error_sums.assign(rec.mask->bits.size(), 0);
      hm.counts.assign(rec.mask->bits.size(), 0);
      first = false;
    } else {
      if (rec.task != hm.task || rec.size != hm.size || rec.mask->rows != hm.rows ||
          rec.mask->cols != hm.cols)
        throw std::invalid_argument(
            "cell_error_heatmap: records span more than one task/size/shape");
    }
    for (std::size_t i = 0; i < rec.mask->bits.size(); ++i) {
      error_sums[i] += rec.mask->bits[i];
      hm.counts[i]++;
    }
  }
  if (first)
    throw std::invalid_argument("cell_error_heatmap: no records with a defined error mask");
  hm.rates.resize(error_sums.size());
  for (std::size_t i = 0; i < error_sums.size(); ++i)
    hm.rates[i] = double(error_sums[i]) / double(hm.counts[i]);
  return hm;
}

HeatmapDiff heatmap_difference(const ErrorHeatmap& a, const ErrorHeatmap& b) {
  if (a.task != b.task || a.size != b.size || a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("heatmap_difference: task/size/shape mismatch");
  HeatmapDiff diff;
  diff.task = a.task;
  diff.size = a.size;
  diff.label_a = a.label;
  diff.label_b = b.label;
  diff.rows = a.rows;
  diff.cols = a.cols;
  diff.values.resize(a.rates.size());
  for (std::size_t i = 0; i < a.rates.size(); ++i) diff.values[i] = a.rates[i] - b.rates[i];
  return diff;
}

namespace {

std::uint8_t lerp_channel(std::uint8_t from, std::uint8_t to, double t) {
  return std::uint8_t(std::lround(from + (to - from) * t));
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

Rgb sequential_color(double rate) {
  double t = clamp01(rate);
  return {lerp_channel(255, 0, t), lerp_channel(255, 0, t), lerp_channel(255, 0, t)};
}

Rgb diverging_color(double value) {
  double v = value < -1.0 ? -1.0 : (value > 1.0 ? 1.0 : value);
  if (v >= 0.0) {
    // white -> red
    return {255, lerp_channel(255, 0, v), lerp_channel(255, 0, v)};
  }
  // white -> blue
  return {lerp_channel(255, 0, -v), lerp_channel(255, 0, -v), 255};
}

namespace {

RasterImage cells_image(std::span<const double> values, int rows, int cols, int cell_px,
                        Rgb (*colormap)(double)) {
  if (cell_px < 1) throw std::invalid_argument("heatmap image: cell_px must be positive");
  RasterImage img(cols * cell_px, rows * cell_px);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      img.fill_rect(j * cell_px, i * cell_px, cell_px, cell_px,
                    colormap(values[std::size_t(i) * cols + j]));
  return img;
}

}  // namespace

RasterImage heatmap_image(const ErrorHeatmap& hm, int cell_px) {
  return cells_image(hm.rates, hm.rows, hm.cols, cell_px, sequential_color);
}

RasterImage heatmap_diff_image(const HeatmapDiff& diff, int cell_px) {
  return cells_image(diff.values, diff.rows, diff.cols, cell_px, diverging_color);
}

std::string heatmap_csv(std::span<const double> values, int rows, int cols) {
  std::string out;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (j > 0) out += ',';
      char buf[64];
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, values[std::size_t(i) * cols + j]);
      if (ec != std::errc{}) throw std::runtime_error("heatmap_csv: to_chars failed");
      out.append(buf, end);
    }
    out += '\n';
  }
  return out;
}

std::vector<double> parse_rate_table(std::string_view csv, int* rows_out, int* cols_out) {
  std::vector<double> values;
  int rows = 0, cols = -1;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t eol = csv.find('\n', pos);
    if (eol == std::string_view::npos) eol = csv.size();
    std::string_view line = csv.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    int line_cols = 0;
    std::size_t p = 0;
    while (p <= line.size()) {
      std::size_t comma = line.find(',', p);
      if (comma == std::string_view::npos) comma = line.size();
      std::string_view tok = line.substr(p, comma - p);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw std::invalid_argument("parse_rate_table: bad number: " + std::string(tok));
      values.push_back(v);
      line_cols++;
      p = comma + 1;
      if (comma == line.size()) break;
    }
    if (cols < 0) cols = line_cols;
    else if (cols != line_cols) throw std::invalid_argument("parse_rate_table: ragged rows");
    rows++;
  }
  if (rows_out) *rows_out = rows;
  if (cols_out) *cols_out = cols < 0 ? 0 : cols;
  return values;
}

std::string accuracy_csv(std::span<const AccuracyRow> rows) {
  std::string out = "task,size,condition,total,correct,incorrect,malformed,accuracy\n";
  for (const auto& row : rows) {
    out += row.task;
    out += ',';
    out += row.size >= 0 ? std::to_string(row.size) : "";
    out += ',';
    out += row.condition;
    out += ',';
    out += std::to_string(row.total);
    out += ',';
    out += std::to_string(row.correct);
    out += ',';
    out += std::to_string(row.incorrect);
    out += ',';
    out += std::to_string(row.malformed);
    out += ',';
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, row.accuracy);
    if (ec != std::errc{}) throw std::runtime_error("accuracy_csv: to_chars failed");
    out.append(buf, end);
    out += '\n';
  }
  return out;
}

namespace {

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report file: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing report file: " + path.string());
}

}  // namespace

ReportPaths export_report(std::span<const ErrorHeatmap> heatmaps,
                          std::span<const HeatmapDiff> diffs,
                          std::span<const AccuracyRow> accuracy,
                          const std::filesystem::path& out_dir, int cell_px) {
  std::filesystem::create_directories(out_dir);
  ReportPaths paths;

  for (const auto& hm : heatmaps) {
    std::string stem = "heatmap-" + std::string(to_string(hm.task)) + "-n" +
                       std::to_string(hm.size) + "-" + hm.label;
    auto png_path = out_dir / (stem + ".png");
    auto csv_path = out_dir / (stem + ".csv");
    write_png(png_path, heatmap_image(hm, cell_px));
    write_text_file(csv_path, heatmap_csv(hm.rates, hm.rows, hm.cols));
    paths.files.push_back(png_path);
    paths.files.push_back(csv_path);
  }
  for (const auto& diff : diffs) {
    std::string stem = "heatmap-diff-" + std::string(to_string(diff.task)) + "-n" +
                       std::to_string(diff.size) + "-" + diff.label_a + "-minus-" +
                       diff.label_b;
    auto png_path = out_dir / (stem + ".png");
    auto csv_path = out_dir / (stem + ".csv");
    write_png(png_path, heatmap_diff_image(diff, cell_px));
    write_text_file(csv_path, heatmap_csv(diff.values, diff.rows, diff.cols));
    paths.files.push_back(png_path);
    paths.files.push_back(csv_path);
  }
  if (!accuracy.empty()) {
    auto acc_path = out_dir / "accuracy.csv";
    write_text_file(acc_path, accuracy_csv(accuracy));
    paths.files.push_back(acc_path);
  }
  return paths;
}

}  // namespace gridbench
