#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nearint/geometry.hpp"

namespace nearint {

using Vec3 = std::array<double, 3>;

inline constexpr int kMaxCurveLevels = 28;

// Midpoint-displacement curve phi: [0, 1] -> R^3 tabulated at the dyadic
// parameters j / 2^levels. Level 0 is the segment from (0,0,0) to (1,0,0).
// Going from level n to n+1, the midpoint of every segment [a, b] is placed
// at (phi(a) + phi(b))/2 + eta * 2^(-(n+1)/2) * u, where u is a unit vector
// orthogonal to phi(b) - phi(a). Each segment carries a reference normal
// (initially e_z; children inherit the normal of the plane spanned by the
// child and parent directions), and u alternates between that normal
// (n even) and its cross product with the segment direction (n odd).
struct SnowflakeCurve {
  int levels = 0;
  double eta = 0.0;
  std::vector<Vec3> values;  // 2^levels + 1 entries

  std::size_t segments() const { return values.size() - 1; }
};

SnowflakeCurve build_snowflake_curve(int levels, double eta);

// Rescaled, recentred curve phi~(x) = sqrt(2M) [phi(x/2M + 1/2) - phi(1/2)]
// evaluated at integer parameters x in [-M, M]. Off-table parameters use
// linear interpolation between the two neighbouring table entries. Requires
// 2M <= 2^levels so the table is at least as fine as the parameter grid.
std::vector<Vec3> rescale_curve(const SnowflakeCurve& curve, std::int64_t M,
                                std::span<const std::int64_t> params);
// Parameters 0, 1, ..., M.
std::vector<Vec3> rescale_curve(const SnowflakeCurve& curve, std::int64_t M);

struct BilipschitzEstimate {
  double c_emp = 0.0;
  double C_emp = 0.0;
  double delta_phi = 0.0;  // 2c^2 / (3C^2 + 2c^2)
  std::size_t pair_count = 0;
};

// Min and max of |phi(s) - phi(t)| / |s - t|^(1/2) over the given index
// pairs. values[i] is the curve value at params[i]. Throws DomainError when a
// pair repeats a parameter and DegenerateCurve (InternalError) when c_emp = 0.
BilipschitzEstimate empirical_bilipschitz(
    std::span<const Vec3> values, std::span<const std::int64_t> params,
    std::span<const std::pair<std::size_t, std::size_t>> pairs);
// All unordered pairs of the given parameters.
BilipschitzEstimate empirical_bilipschitz(std::span<const Vec3> values,
                                          std::span<const std::int64_t> params);

struct LiftParams {
  std::int64_t M = 0;
  double lambda = 0.0;
  double delta = 0.0;
};

struct SnowflakeLift {
  PointSet points;  // certified-float, dim 4
  LiftParams params;
  BilipschitzEstimate constants;
  double eta = 0.0;
  int levels = 0;
};

// Bilipschitz constants of the rescaled curve on all pairs of {0, 1, ..., M}.
BilipschitzEstimate lift_constants(const SnowflakeCurve& curve, std::int64_t M);

// Emits {(n, lambda phi~(n)) : n = 1..M} with lambda = sqrt(3 delta) / c_emp.
// Throws PreconditionError when delta exceeds delta_phi.
SnowflakeLift snowflake_lift(std::int64_t M, const SnowflakeCurve& curve, double delta);
// delta = delta_phi of the measured constants.
SnowflakeLift snowflake_lift(std::int64_t M, const SnowflakeCurve& curve);

struct EtaSweepEntry {
  double eta = 0.0;
  BilipschitzEstimate constants;
};

// Ten evenly spaced amplitudes 0.1, 0.2, ..., 1.0.
std::vector<double> default_eta_sweep();

// Measures delta_phi for each eta and returns the entries in input order.
std::vector<EtaSweepEntry> sweep_eta(std::int64_t M, int levels, std::span<const double> etas);
// The entry with the largest delta_phi (first on ties).
EtaSweepEntry best_eta(std::span<const EtaSweepEntry> sweep);

}  // namespace nearint
