#pragma once

#include <cstddef>
#include <vector>

namespace nearint {

// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct LpSolution {
  std::vector<double> x;     // primal, one per column of A
  std::vector<double> dual;  // one per row of A
  double objective = 0.0;
  std::size_t pivots = 0;
};

// maximize c.x subject to A x <= b, x >= 0, with b >= 0 (the origin is
// feasible). Dense tableau simplex, Dantzig pricing with a switch to Bland's
// rule after a run of degenerate pivots. Throws InternalError if the problem
// is unbounded or the pivot limit is reached.
LpSolution solve_lp(const Matrix& A, const std::vector<double>& b, const std::vector<double>& c);

struct GameSolution {
  std::vector<double> row_strategy;  // probability vector over rows
  std::vector<double> col_strategy;  // probability vector over columns
  double value = 0.0;                // max_row min_col of row' P col
};

// Value and optimal mixed strategies of the zero-sum game where the row
// player maximizes and the column player minimizes row' * payoff * col.
GameSolution solve_matrix_game(const Matrix& payoff);

}  // namespace nearint
