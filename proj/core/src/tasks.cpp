#include "gridbench/tasks.hpp"

#include <cmath>

namespace gridbench {

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Grid life_step(const Grid& g) {
  Grid out(g.rows(), g.cols());
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) {
      int live = 0;
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          int ni = i + di, nj = j + dj;
          if (ni < 0 || nj < 0 || ni >= g.rows() || nj >= g.cols()) continue;
          live += g(ni, nj);
        }
      if (g(i, j))
        out(i, j) = (live == 2 || live == 3) ? 1 : 0;
      else
        out(i, j) = (live == 3) ? 1 : 0;
    }
  return out;
}

std::string_view to_string(LuReason r) {
  switch (r) {
    case LuReason::none: return "none";
    case LuReason::shape: return "shape";
    case LuReason::l_not_lower: return "l-not-lower-triangular";
    case LuReason::u_not_upper: return "u-not-upper-triangular";
    case LuReason::reconstruction: return "reconstruction";
  }
  throw std::logic_error("bad LuReason");
}

LuVerdict lu_verify(const Matrix& a, const LUPair& pair, const Tolerances& tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("lu_verify: A must be square");
  const Matrix& l = pair.l;
  const Matrix& u = pair.u;
  if (l.rows() != l.cols() || u.rows() != u.cols() || l.rows() != a.rows() ||
      u.rows() != a.rows())
    return {false, LuReason::shape, 0.0};
  int n = a.rows();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(l(i, j)) > tol.triangular_abs) return {false, LuReason::l_not_lower, 0.0};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(u(i, j)) > tol.triangular_abs) return {false, LuReason::u_not_upper, 0.0};
  Matrix prod = matmul(l, u);
  double max_residual = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      max_residual = std::max(max_residual, std::abs(prod(i, j) - a(i, j)));
  if (max_residual > tol.reconstruction_abs)
    return {false, LuReason::reconstruction, max_residual};
  return {true, LuReason::none, max_residual};
}

std::pair<Matrix, LUPair> lu_generate(int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("lu_generate: n must be at least 2");
  Matrix l(n, n), u(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      l(i, j) = double(i == j ? rng.uniform_nonzero_int(-9, 9) : rng.uniform_int(-9, 9));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      u(i, j) = double(i == j ? rng.uniform_nonzero_int(-9, 9) : rng.uniform_int(-9, 9));
  Matrix a = matmul(l, u);
  return {std::move(a), LUPair{std::move(l), std::move(u)}};
}

Matrix random_transpose_input(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_transpose_input: n must be positive");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = double(rng.uniform_int(0, 99));
  return m;
}

Grid random_life_grid(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_life_grid: n must be positive");
  Grid g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = std::uint8_t(rng.uniform_int(0, 1));
  return g;
}

}  // namespace gridbench
