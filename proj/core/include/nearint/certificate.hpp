#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nearint/rational.hpp"

namespace nearint {

// Certificate that T(x) = sum_k c_k cos(k x - ell pi / 4) is at most -margin
// on all of I_delta = [2 pi delta, 2 pi (1 - delta)].
//
// The guarantee is: the maximum of T over the uniform grid with step
// grid_step that starts at 2 pi delta and ends at 2 pi (1 - delta), plus
// derivative_bound * grid_step / 2, is <= -margin. Since every point of
// I_delta lies within grid_step / 2 of a grid point and |T'| <=
// derivative_bound, this bounds T on the whole interval.
struct TrigCertificate {
  Rational delta;
  int ell = 1;
  int degree = 0;
  std::vector<double> coeffs;  // c_1 .. c_degree, nonnegative, summing to 1
  double margin = 0.0;
  double grid_step = 0.0;
  double derivative_bound = 0.0;

  // Solver metadata.
  std::size_t lp_grid_points = 0;
  std::size_t certify_grid_points = 0;
  std::vector<int> degree_schedule;
  double wall_time_seconds = 0.0;
};

struct CertifyOptions {
  std::vector<int> degree_schedule{4, 8, 16, 32, 64};
  int max_degree = 64;
  // Initial LP grid is lp_points_per_degree * m + 1 points; each refinement
  // halves the step until max_lp_grid_points.
  std::size_t lp_points_per_degree = 8;
  std::size_t max_lp_grid_points = 8193;
  std::size_t max_certify_grid_points = std::size_t{1} << 24;
  // LP grid margins at or below this are treated as "no negative polynomial".
  double min_grid_margin = 1e-9;
};

struct CertifyResult {
  std::optional<TrigCertificate> certificate;
  // Largest LP grid margin seen over all degrees and grids.
  double best_grid_margin = -1.0;
  int best_degree = 0;
  std::size_t lp_solves = 0;
  double wall_time_seconds = 0.0;

  bool feasible() const { return certificate.has_value(); }
};

// Interval endpoints 2 pi delta and 2 pi (1 - delta).
double interval_start(const Rational& delta);
double interval_end(const Rational& delta);

double trig_polynomial(std::span<const double> coeffs, int ell, double x);

// Maximum of T over n uniformly spaced points from 2 pi delta to
// 2 pi (1 - delta), inclusive.
double grid_maximum(std::span<const double> coeffs, int ell, const Rational& delta,
                    std::size_t n);

// One degree: solve the LP on a grid of `grid_points` points (refining up to
// options.max_lp_grid_points) and try to turn the grid solution into a
// continuum certificate.
CertifyResult certify_at_degree(const Rational& delta, int ell, int degree,
                                std::size_t grid_points, const CertifyOptions& options = {});

// Walks the degree schedule (degrees above max_degree are skipped) and stops
// at the first certified polynomial. For ell = 2 (mod 4) no such polynomial
// exists and the result is infeasible with best_grid_margin near zero.
CertifyResult certify_negative_polynomial(const Rational& delta, int ell,
                                          const CertifyOptions& options = {});

// Independent re-check on a grid of twice the density in long double
// arithmetic: coefficients nonnegative and summing to 1, the derivative bound
// valid, and max T + D h' / 2 <= -margin / 2 on the finer grid.
bool check_certificate(const TrigCertificate& cert);

// For ell = 2 (mod 4), evaluates the integral of cos(kx - ell pi/4) over
// I_delta in closed form for k = 1..k_max and confirms each vanishes to
// within 1e-12. Throws DomainError for other ell.
bool lebesgue_witness_check(const Rational& delta, int ell, int k_max);

}  // namespace nearint
