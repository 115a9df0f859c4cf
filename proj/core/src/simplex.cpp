#include "nearint/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "nearint/errors.hpp"

namespace nearint {

LpSolution solve_lp(const Matrix& A, const std::vector<double>& b, const std::vector<double>& c) {
  const std::size_t m = A.rows;
  const std::size_t n = A.cols;
  if (b.size() != m || c.size() != n) throw DomainError("LP dimensions do not match");
  for (double v : b) {
    if (!(v >= 0.0)) throw DomainError("LP right-hand side must be nonnegative");
  }

  // Tableau rows 0..m-1 are constraints, row m is the objective.
  // Columns: n structural, m slack, 1 right-hand side.
  const std::size_t width = n + m + 1;
  const std::size_t rhs = n + m;
  std::vector<double> T((m + 1) * width, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return T[i * width + j]; };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = A(i, j);
    at(i, n + i) = 1.0;
    at(i, rhs) = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) at(m, j) = -c[j];

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  constexpr double kPriceTol = 1e-12;
  constexpr double kPivotTol = 1e-11;
  const std::size_t max_pivots = 50 * (m + n) + 1000;
  std::size_t pivots = 0;
  std::size_t degenerate_run = 0;

  for (;;) {
    const bool bland = degenerate_run > 50;
    std::size_t enter = width;
    double best = -kPriceTol;
    for (std::size_t j = 0; j < n + m; ++j) {
      const double r = at(m, j);
      if (bland) {
        if (r < -kPriceTol) {
          enter = j;
          break;
        }
      } else if (r < best) {
        best = r;
        enter = j;
      }
    }
    if (enter == width) break;  // optimal

    std::size_t leave = m;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = at(i, enter);
      if (a > kPivotTol) {
        const double q = at(i, rhs) / a;
        if (q < ratio - 1e-15 || (q <= ratio + 1e-15 && leave < m && basis[i] < basis[leave])) {
          ratio = q;
          leave = i;
        }
      }
    }
    if (leave == m) throw InternalError("LP is unbounded");

    degenerate_run = at(leave, rhs) <= 1e-14 ? degenerate_run + 1 : 0;

    const double pivot = at(leave, enter);
    for (std::size_t j = 0; j < width; ++j) at(leave, j) /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = at(i, enter);
      if (f == 0.0) continue;
      double* row = &T[i * width];
      const double* prow = &T[leave * width];
      for (std::size_t j = 0; j < width; ++j) row[j] -= f * prow[j];
      row[enter] = 0.0;
    }
    basis[leave] = enter;
    if (++pivots > max_pivots) {
      throw InternalError(fmt::format("LP pivot limit ({}) reached", max_pivots));
    }
  }

  LpSolution sol;
  sol.pivots = pivots;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) sol.x[basis[i]] = std::max(0.0, at(i, rhs));
  }
  sol.dual.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) sol.dual[i] = std::max(0.0, at(m, n + i));
  sol.objective = at(m, rhs);
  return sol;
}

GameSolution solve_matrix_game(const Matrix& payoff) {
  if (payoff.rows == 0 || payoff.cols == 0) throw DomainError("empty payoff matrix");
  double lo = std::numeric_limits<double>::infinity();
  for (double v : payoff.data) lo = std::min(lo, v);
  const double shift = 1.0 - lo;  // shifted payoff is >= 1

  // Column player: maximize sum w subject to (P + shift) w <= 1, w >= 0.
  // Row strategy comes from the duals.
  Matrix shifted(payoff.rows, payoff.cols);
  for (std::size_t i = 0; i < payoff.data.size(); ++i) shifted.data[i] = payoff.data[i] + shift;
  const LpSolution lp = solve_lp(shifted, std::vector<double>(payoff.rows, 1.0),
                                 std::vector<double>(payoff.cols, 1.0));
  if (!(lp.objective > 0.0)) throw InternalError("matrix game LP returned a nonpositive value");

  GameSolution game;
  game.value = 1.0 / lp.objective - shift;
  auto normalize = [](std::vector<double> v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    if (sum > 0.0) {
      for (double& x : v) x /= sum;
    }
    return v;
  };
  game.row_strategy = normalize(lp.dual);
  game.col_strategy = normalize(lp.x);
  return game;
}

}  // namespace nearint
