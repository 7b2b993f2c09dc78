#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gridbench {

enum class TaskKind { transpose, life, lu };
enum class Split { train, test };
enum class Condition { text, visual };

std::string_view to_string(TaskKind t);
std::string_view to_string(Split s);
std::string_view to_string(Condition c);
TaskKind task_from_string(std::string_view s);
Split split_from_string(std::string_view s);
Condition condition_from_string(std::string_view s);

/// Dense row-major 2D array of numbers. Generated inputs hold exact
/// integer values; parsed model outputs may hold arbitrary decimals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), entries_(checked_size(rows, cols), fill) {}
  Matrix(int rows, int cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != checked_size(rows, cols))
      throw std::invalid_argument("Matrix: entry count does not match shape");
  }
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int i, int j) const { return entries_[std::size_t(i) * cols_ + j]; }
  double& operator()(int i, int j) { return entries_[std::size_t(i) * cols_ + j]; }
  std::span<const double> entries() const { return entries_; }
  bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  static std::size_t checked_size(int rows, int cols) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("Matrix: nonpositive shape");
    return std::size_t(rows) * std::size_t(cols);
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> entries_;
};

/// Row-major binary cell lattice. 1 is live, 0 is dead.
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, std::uint8_t fill = 0)
      : rows_(rows), cols_(cols), cells_(checked_size(rows, cols), checked_cell(fill)) {}
  Grid(int rows, int cols, std::vector<std::uint8_t> cells)
      : rows_(rows), cols_(cols), cells_(std::move(cells)) {
    if (cells_.size() != checked_size(rows, cols))
      throw std::invalid_argument("Grid: cell count does not match shape");
    for (auto c : cells_) checked_cell(c);
  }
  static Grid from_rows(std::initializer_list<std::initializer_list<int>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::uint8_t operator()(int i, int j) const { return cells_[std::size_t(i) * cols_ + j]; }
  std::uint8_t& operator()(int i, int j) { return cells_[std::size_t(i) * cols_ + j]; }
  std::span<const std::uint8_t> cells() const { return cells_; }
  bool same_shape(const Grid& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static std::size_t checked_size(int rows, int cols) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("Grid: nonpositive shape");
    return std::size_t(rows) * std::size_t(cols);
  }
  static std::uint8_t checked_cell(std::uint8_t c) {
    if (c > 1) throw std::invalid_argument("Grid: cell outside {0,1}");
    return c;
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

struct LUPair {
  Matrix l;
  Matrix u;
  friend bool operator==(const LUPair&, const LUPair&) = default;
};

struct Tolerances {
  double reconstruction_abs = 1e-6;
  double triangular_abs = 1e-6;
};

/// Formats a value the way serialized instances print it: integral values
/// without a decimal point, everything else with the shortest digits that
/// round-trip.
std::string format_number(double v);

}  // namespace gridbench
