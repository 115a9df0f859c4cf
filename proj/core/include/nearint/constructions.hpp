#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nearint/geometry.hpp"
#include "nearint/rational.hpp"

namespace nearint {

using BigInt = boost::multiprecision::cpp_int;

// Largest delta accepted by the digit-expansion construction, 1/(48 * 3^5).
inline const Rational kMaxSarkozyDelta{1, 11664};

// Default cap on the number of materialized points.
inline constexpr std::uint64_t kDefaultPointCap = 10'000'000;

// ---------------------------------------------------------------------------
// Window lemmas
// ---------------------------------------------------------------------------

// If a is a positive integer and 3 delta <= r/a <= 2(1 - delta), then
// a + delta < sqrt(a^2 + r) < a + 1 - delta. Returns whether (a, r) lies in
// the window; when it does the conclusion is re-checked numerically and a
// violation throws InternalError.
bool window_check_euclid(std::int64_t a, double r, const Rational& delta);

// Same test with integer r, decided in exact rational arithmetic; the
// conclusion is re-checked with the exact square-root predicate.
bool window_check_euclid_exact(std::int64_t a, std::int64_t r, const Rational& delta);

// l^p analogue: p delta (3/2)^(p-1) <= r / a^(p-1) <= p (1 - delta) implies
// the gap of (a^p + r)^(1/p) exceeds delta. p must exceed 1.
bool window_check_lp(double p, std::int64_t a, double r, const Rational& delta);

// ---------------------------------------------------------------------------
// Digit-expansion construction in R^3
// ---------------------------------------------------------------------------

struct ConstructionParams {
  Rational X;
  Rational delta;
  int k = 0;
  int t = 0;
};

// Picks the unique k >= 3 with 1/(48 (k+1)^5) < delta <= 1/(48 k^5) and the
// unique t >= 0 with 16 k^(2t+4) <= X < 16 k^(2t+6). Requires
// delta <= 1/11664 and X >= 1/delta.
ConstructionParams choose_params(const Rational& X, const Rational& delta);

// (k - 1)^(2(t + 1)).
BigInt construction_size(const ConstructionParams& params);

// Natural log of the guaranteed lower bound delta^(6/5) X^(1 - 6 delta^(1/5)).
double log_size_lower_bound(const Rational& X, const Rational& delta);

// k^(2t) > X / (16 k^6), decided exactly.
bool growth_guarantee_holds(const ConstructionParams& params);
// k > delta^(-1/5) / 3, i.e. (3k)^5 delta > 1, decided exactly.
bool base_guarantee_holds(const ConstructionParams& params);

// Point for one pair of base-k digit strings (least significant first):
// x = sum alpha_i k^i, y = sum beta_i k^i,
// z = 8 (sum alpha_i k^(2i+2) + sum beta_i k^(2i+3)).
Point digit_point(int k, std::span<const int> alpha, std::span<const int> beta);

struct Sarkozy3d {
  PointSet points;
  ConstructionParams params;
};

// Enumerates all (k-1)^(2(t+1)) digit pairs. Throws CapacityError when the
// count exceeds `cap`; construction_size() reports the count without
// materializing.
Sarkozy3d build_sarkozy3d(const Rational& X, const Rational& delta,
                          std::uint64_t cap = kDefaultPointCap);

}  // namespace nearint
