#pragma once

#include <utility>

#include "gridbench/rng.hpp"
#include "gridbench/types.hpp"

namespace gridbench {

Matrix transpose(const Matrix& m);

Matrix matmul(const Matrix& a, const Matrix& b);

/// One synchronous step of Conway's Game of Life. Cells outside the board
/// count as dead: a live cell survives with 2 or 3 live neighbors in its
/// 8-neighborhood, a dead cell is born with exactly 3.
Grid life_step(const Grid& g);

enum class LuReason { none, shape, l_not_lower, u_not_upper, reconstruction };

struct LuVerdict {
  bool accepted = false;
  LuReason reason = LuReason::none;
  double max_residual = 0.0;  // max |(L*U - A)[i][j]|, filled when shapes match
};

std::string_view to_string(LuReason r);

/// Functional check of a factorization: shapes must match A, L must be lower
/// triangular and U upper triangular within tol.triangular_abs, and L*U must
/// reconstruct A within tol.reconstruction_abs (max-abs residual). A reject
/// carries the first violated condition, checked in that order.
LuVerdict lu_verify(const Matrix& a, const LUPair& pair, const Tolerances& tol = {});

/// Builds A = L*U with integer factor entries in [-9, 9]. Diagonals of both
/// factors are drawn from the nonzero values so A is nonsingular and admits a
/// pivot-free factorization. Requires n >= 2.
std::pair<Matrix, LUPair> lu_generate(int n, Rng& rng);

/// Square matrix with integer entries in [0, 99].
Matrix random_transpose_input(int n, Rng& rng);

/// Square grid, each cell live with probability 1/2.
Grid random_life_grid(int n, Rng& rng);

}  // namespace gridbench
