#include "gridbench/types.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace gridbench {

std::string_view to_string(TaskKind t) {
  switch (t) {
    case TaskKind::transpose: return "transpose";
    case TaskKind::life: return "life";
    case TaskKind::lu: return "lu";
  }
  throw std::logic_error("bad TaskKind");
}

std::string_view to_string(Split s) {
  return s == Split::train ? "train" : "test";
}

std::string_view to_string(Condition c) {
  return c == Condition::text ? "text" : "visual";
}

TaskKind task_from_string(std::string_view s) {
  if (s == "transpose") return TaskKind::transpose;
  if (s == "life") return TaskKind::life;
  if (s == "lu") return TaskKind::lu;
  throw std::invalid_argument("unsupported task: " + std::string(s));
}

Split split_from_string(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "test") return Split::test;
  throw std::invalid_argument("unknown split: " + std::string(s));
}

Condition condition_from_string(std::string_view s) {
  if (s == "text") return Condition::text;
  if (s == "visual") return Condition::visual;
  throw std::invalid_argument("unknown condition: " + std::string(s));
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  int r = int(rows.size());
  int c = r > 0 ? int(rows.begin()->size()) : 0;
  std::vector<double> entries;
  entries.reserve(std::size_t(r) * c);
  for (const auto& row : rows) {
    if (int(row.size()) != c) throw std::invalid_argument("Matrix::from_rows: ragged rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(entries));
}

Grid Grid::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  int r = int(rows.size());
  int c = r > 0 ? int(rows.begin()->size()) : 0;
  std::vector<std::uint8_t> cells;
  cells.reserve(std::size_t(r) * c);
  for (const auto& row : rows) {
    if (int(row.size()) != c) throw std::invalid_argument("Grid::from_rows: ragged rows");
    for (int v : row) {
      if (v != 0 && v != 1) throw std::invalid_argument("Grid::from_rows: cell outside {0,1}");
      cells.push_back(std::uint8_t(v));
    }
  }
  return Grid(r, c, std::move(cells));
}

std::string format_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
    // -0 prints as 0
    long long n = (long long)v;
    return std::to_string(n);
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_number: to_chars failed");
  return std::string(buf, end);
}

}  // namespace gridbench
