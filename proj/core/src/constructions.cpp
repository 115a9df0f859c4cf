#include "nearint/constructions.hpp"

#include <cfloat>
#include <cmath>

#include <fmt/format.h>

#include "nearint/errors.hpp"

namespace nearint {

namespace mp = boost::multiprecision;

namespace {

void require_window_args(std::int64_t a, const Rational& delta) {
  if (a < 1) throw DomainError(fmt::format("window lemma needs a >= 1, got {}", a));
  require_open_half(delta);
}

void require_positive(double r) {
  if (!std::isfinite(r) || r <= 0.0) {
    throw DomainError(fmt::format("window lemma needs finite r > 0, got {}", r));
  }
}

BigInt big_pow(const BigInt& base, int e) {
  BigInt out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

bool window_check_euclid(std::int64_t a, double r, const Rational& delta) {
  require_window_args(a, delta);
  require_positive(r);
  const long double d = to_long_double(delta);
  const auto al = static_cast<long double>(a);
  const long double rl = r;
  const bool inside = 3.0L * d * al <= rl && rl <= 2.0L * (1.0L - d) * al;
  if (inside) {
    const long double root = std::sqrt(al * al + rl);
    const long double err = 4.0L * LDBL_EPSILON * root;
    if (!(root - err > al + d && root + err < al + 1.0L - d)) {
      throw InternalError(fmt::format(
          "window lemma conclusion failed for a={}, r={}, delta={}", a, r, to_string(delta)));
    }
  }
  return inside;
}

bool window_check_euclid_exact(std::int64_t a, std::int64_t r, const Rational& delta) {
  require_window_args(a, delta);
  if (r <= 0) throw DomainError(fmt::format("window lemma needs r > 0, got {}", r));
  const mp::int256_t p = delta.numerator();
  const mp::int256_t q = delta.denominator();
  const mp::int256_t A = a;
  const mp::int256_t R = r;
  // 3 delta <= r/a <= 2 (1 - delta)  <=>  3 p a <= q r <= 2 (q - p) a
  const bool inside = 3 * p * A <= q * R && q * R <= 2 * (q - p) * A;
  if (inside) {
    // a + delta < sqrt(a^2 + r) < a + 1 - delta, squared and scaled by q^2.
    const mp::int256_t n = A * A + R;
    const mp::int256_t lo = A * q + p;
    const mp::int256_t hi = (A + 1) * q - p;
    if (!(n * q * q > lo * lo && n * q * q < hi * hi)) {
      throw InternalError(fmt::format(
          "window lemma conclusion failed for a={}, r={}, delta={}", a, r, to_string(delta)));
    }
  }
  return inside;
}

bool window_check_lp(double p, std::int64_t a, double r, const Rational& delta) {
  if (!std::isfinite(p) || p <= 1.0) {
    throw DomainError(fmt::format("lp window lemma needs p > 1, got {}", p));
  }
  require_window_args(a, delta);
  require_positive(r);
  const long double d = to_long_double(delta);
  const long double pl = p;
  const auto al = static_cast<long double>(a);
  const long double rl = r;
  const long double scale = std::pow(al, pl - 1.0L);
  // Written so that p = 2 rounds exactly like window_check_euclid.
  const long double lower = pl * d * std::pow(1.5L, pl - 1.0L) * scale;
  const long double upper = pl * (1.0L - d) * scale;
  const bool inside = lower <= rl && rl <= upper;
  if (inside) {
    const long double value = std::pow(std::pow(al, pl) + rl, 1.0L / pl);
    const long double err = 64.0L * LDBL_EPSILON * (pl + 1.0L) * value;
    const long double frac = value - std::floor(value);
    const long double gap = std::min(frac, 1.0L - frac);
    if (!(gap - err > d)) {
      throw InternalError(fmt::format(
          "lp window lemma conclusion failed for p={}, a={}, r={}, delta={}", p, a, r,
          to_string(delta)));
    }
  }
  return inside;
}

ConstructionParams choose_params(const Rational& X, const Rational& delta) {
  if (delta <= 0) {
    throw PreconditionError(fmt::format("delta must be positive, got {}", to_string(delta)));
  }
  if (delta > kMaxSarkozyDelta) {
    throw PreconditionError(fmt::format(
        "delta = {} exceeds the construction bound 1/(48*3^5) = 1/11664", to_string(delta)));
  }
  if (X * delta < 1) {
    throw PreconditionError(fmt::format("X = {} is below 1/delta = {}; need X >= 1/delta",
                                        to_string(X), to_string(1 / delta)));
  }
  if (X > Rational(kLatticeCoordLimit)) {
    throw PreconditionError("X must not exceed 2^60");
  }
  const BigInt p = delta.numerator();
  const BigInt q = delta.denominator();
  const BigInt x_num = X.numerator();
  const BigInt x_den = X.denominator();

  int k = 3;
  // Largest k with 48 k^5 delta <= 1.
  while (48 * big_pow(k + 1, 5) * p <= q) ++k;

  int t = 0;
  // 16 k^(2t+4) <= X holds for t = 0 because X >= 1/delta >= 48 k^5.
  while (16 * big_pow(k, 2 * t + 6) * x_den <= x_num) ++t;

  return ConstructionParams{X, delta, k, t};
}

BigInt construction_size(const ConstructionParams& params) {
  return big_pow(params.k - 1, 2 * (params.t + 1));
}

double log_size_lower_bound(const Rational& X, const Rational& delta) {
  const double d = to_double(delta);
  const double x = to_double(X);
  return 1.2 * std::log(d) + (1.0 - 6.0 * std::pow(d, 0.2)) * std::log(x);
}

bool growth_guarantee_holds(const ConstructionParams& params) {
  const BigInt lhs = 16 * big_pow(params.k, 2 * params.t + 6) * BigInt(params.X.denominator());
  return lhs > BigInt(params.X.numerator());
}

bool base_guarantee_holds(const ConstructionParams& params) {
  return big_pow(3 * params.k, 5) * BigInt(params.delta.numerator()) >
         BigInt(params.delta.denominator());
}

Point digit_point(int k, std::span<const int> alpha, std::span<const int> beta) {
  if (k < 3) throw DomainError("digit base k must be at least 3");
  if (alpha.size() != beta.size() || alpha.empty()) {
    throw DomainError("digit strings must be nonempty and of equal length");
  }
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;
  std::int64_t k_i = 1;      // k^i
  std::int64_t k_2i2 = k * k;  // k^(2i+2)
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0 || alpha[i] > k - 2 || beta[i] < 0 || beta[i] > k - 2) {
      throw DomainError(fmt::format("digits must lie in [0, {}]", k - 2));
    }
    x += alpha[i] * k_i;
    y += beta[i] * k_i;
    z += 8 * (alpha[i] * k_2i2 + beta[i] * k_2i2 * k);
    k_i *= k;
    k_2i2 *= static_cast<std::int64_t>(k) * k;
  }
  return Point(std::vector<std::int64_t>{x, y, z});
}

Sarkozy3d build_sarkozy3d(const Rational& X, const Rational& delta, std::uint64_t cap) {
  const ConstructionParams params = choose_params(X, delta);
  const BigInt count = construction_size(params);
  if (count > cap) {
    throw CapacityError(fmt::format("construction has {} points, above the cap of {}",
                                    count.str(), cap));
  }
  const auto n = count.convert_to<std::uint64_t>();
  const int k = params.k;
  const auto digits = static_cast<std::size_t>(params.t + 1);

  // Per-position contributions of one unit of alpha_i / beta_i.
  std::vector<std::int64_t> x_unit(digits);
  std::vector<std::int64_t> z_alpha(digits);
  std::vector<std::int64_t> z_beta(digits);
  std::int64_t k_i = 1;
  std::int64_t k_2i2 = static_cast<std::int64_t>(k) * k;
  for (std::size_t i = 0; i < digits; ++i) {
    x_unit[i] = k_i;
    z_alpha[i] = 8 * k_2i2;
    z_beta[i] = 8 * k_2i2 * k;
    k_i *= k;
    k_2i2 *= static_cast<std::int64_t>(k) * k;
  }

  std::vector<Point> points;
  points.reserve(n);
  const std::uint64_t radix = static_cast<std::uint64_t>(k - 1);
  for (std::uint64_t index = 0; index < n; ++index) {
    std::uint64_t rest = index;
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      const auto a = static_cast<std::int64_t>(rest % radix);
      rest /= radix;
      x += a * x_unit[i];
      z += a * z_alpha[i];
    }
    for (std::size_t i = 0; i < digits; ++i) {
      const auto b = static_cast<std::int64_t>(rest % radix);
      rest /= radix;
      y += b * x_unit[i];
      z += b * z_beta[i];
    }
    points.emplace_back(std::vector<std::int64_t>{x, y, z});
  }
  return Sarkozy3d{PointSet(std::move(points), ArithmeticMode::exact_lattice, to_double(X)),
                   params};
}

}  // namespace nearint
