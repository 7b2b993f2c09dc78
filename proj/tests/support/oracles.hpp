#pragma once

// Independent reference implementations used to cross-check the library.
// These deliberately share no code with the implementations they verify.

#include <cstdint>
#include <vector>

#include "gridbench/types.hpp"

namespace gridbench::testing {

/// Life step over an explicitly zero-padded copy of the board.
inline Grid life_step_padded(const Grid& g) {
  int rows = g.rows(), cols = g.cols();
  std::vector<std::vector<int>> padded(rows + 2, std::vector<int>(cols + 2, 0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) padded[i + 1][j + 1] = g(i, j);
  Grid out(rows, cols);
  for (int i = 1; i <= rows; ++i)
    for (int j = 1; j <= cols; ++j) {
      int live = padded[i - 1][j - 1] + padded[i - 1][j] + padded[i - 1][j + 1] +
                 padded[i][j - 1] + padded[i][j + 1] + padded[i + 1][j - 1] +
                 padded[i + 1][j] + padded[i + 1][j + 1];
      int next;
      if (padded[i][j] == 1)
        next = (live == 2 || live == 3) ? 1 : 0;
      else
        next = (live == 3) ? 1 : 0;
      out(i - 1, j - 1) = std::uint8_t(next);
    }
  return out;
}

/// Schoolbook product, index-by-index.
inline Matrix matmul_reference(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      double sum = 0.0;
      for (int k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
      out(i, j) = sum;
    }
  return out;
}

}  // namespace gridbench::testing
