#include "nearint/snowflake.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "nearint/errors.hpp"

namespace nearint {
namespace {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Unit vector orthogonal to `dir` (unit), as close as possible to `ref`.
Vec3 orthogonal_unit(const Vec3& dir, const Vec3& ref) {
  Vec3 e = ref - dot(ref, dir) * dir;
  double len = norm(e);
  if (len < 1e-9) {
    // ref is parallel to dir: fall back to the least aligned axis.
    std::size_t axis = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (std::fabs(dir[i]) < std::fabs(dir[axis])) axis = i;
    }
    Vec3 unit{0.0, 0.0, 0.0};
    unit[axis] = 1.0;
    e = unit - dot(unit, dir) * dir;
    len = norm(e);
  }
  return (1.0 / len) * e;
}

}  // namespace

SnowflakeCurve build_snowflake_curve(int levels, double eta) {
  if (levels < 1 || levels > kMaxCurveLevels) {
    throw DomainError(fmt::format("curve levels must lie in [1, {}], got {}", kMaxCurveLevels,
                                  levels));
  }
  if (!std::isfinite(eta) || eta < 0.0) {
    throw DomainError(fmt::format("displacement amplitude must be finite and >= 0, got {}", eta));
  }
  const std::size_t segments = std::size_t{1} << levels;
  SnowflakeCurve curve;
  curve.levels = levels;
  curve.eta = eta;
  curve.values.assign(segments + 1, Vec3{0.0, 0.0, 0.0});
  curve.values[segments] = {1.0, 0.0, 0.0};

  std::vector<Vec3> normals{{0.0, 0.0, 1.0}};
  for (int n = 0; n < levels; ++n) {
    const std::size_t step = segments >> n;
    const std::size_t count = std::size_t{1} << n;
    const double amplitude = eta * std::pow(2.0, -0.5 * (n + 1));
    std::vector<Vec3> next(2 * count);
    for (std::size_t s = 0; s < count; ++s) {
      const std::size_t i = s * step;
      const Vec3& a = curve.values[i];
      const Vec3& b = curve.values[i + step];
      const Vec3 d = b - a;
      const Vec3 dir = (1.0 / norm(d)) * d;
      const Vec3 e1 = orthogonal_unit(dir, normals[s]);
      const Vec3 u = (n % 2 == 0) ? e1 : cross(dir, e1);
      const Vec3 mid = 0.5 * (a + b) + amplitude * u;
      curve.values[i + step / 2] = mid;

      const Vec3 halves[2] = {mid - a, b - mid};
      for (int c = 0; c < 2; ++c) {
        const Vec3 bend = cross(halves[c], d);
        const double len = norm(bend);
        next[2 * s + c] = len > 1e-12 * norm(halves[c]) * norm(d) ? (1.0 / len) * bend : e1;
      }
    }
    normals = std::move(next);
  }
  return curve;
}

std::vector<Vec3> rescale_curve(const SnowflakeCurve& curve, std::int64_t M,
                                std::span<const std::int64_t> params) {
  if (M < 1) throw DomainError(fmt::format("M must be positive, got {}", M));
  if (curve.levels < 1 || curve.values.size() != (std::size_t{1} << curve.levels) + 1) {
    throw DomainError("curve table is malformed");
  }
  const std::int64_t segments = std::int64_t{1} << curve.levels;
  if (2 * M > segments) {
    int need = 0;
    while ((std::int64_t{1} << need) < 2 * M) ++need;
    throw PreconditionError(fmt::format(
        "curve with {} levels is too coarse for M = {}; refine to at least {} levels",
        curve.levels, M, need));
  }
  const Vec3 center = curve.values[static_cast<std::size_t>(segments / 2)];
  const double scale = std::sqrt(2.0 * static_cast<double>(M));
  std::vector<Vec3> out;
  out.reserve(params.size());
  for (std::int64_t x : params) {
    if (x < -M || x > M) {
      throw DomainError(fmt::format("parameter {} outside [-{}, {}]", x, M, M));
    }
    // Table position (x/2M + 1/2) * 2^levels = (x + M) 2^(levels-1) / M.
    const std::int64_t num = (x + M) << (curve.levels - 1);
    const auto i = static_cast<std::size_t>(num / M);
    const std::int64_t rem = num % M;
    Vec3 value = curve.values[i];
    if (rem != 0) {
      const double f = static_cast<double>(rem) / static_cast<double>(M);
      value = value + f * (curve.values[i + 1] - curve.values[i]);
    }
    out.push_back(scale * (value - center));
  }
  return out;
}

std::vector<Vec3> rescale_curve(const SnowflakeCurve& curve, std::int64_t M) {
  if (M < 1) throw DomainError(fmt::format("M must be positive, got {}", M));
  std::vector<std::int64_t> params(static_cast<std::size_t>(M) + 1);
  for (std::int64_t x = 0; x <= M; ++x) params[static_cast<std::size_t>(x)] = x;
  return rescale_curve(curve, M, params);
}

BilipschitzEstimate empirical_bilipschitz(
    std::span<const Vec3> values, std::span<const std::int64_t> params,
    std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  if (values.size() != params.size()) {
    throw DomainError("values and parameters differ in length");
  }
  if (pairs.empty()) throw DomainError("bilipschitz estimate needs at least one pair");
  BilipschitzEstimate est;
  est.c_emp = std::numeric_limits<double>::infinity();
  est.C_emp = 0.0;
  for (const auto& [i, j] : pairs) {
    if (i >= values.size() || j >= values.size()) throw DomainError("pair index out of range");
    if (params[i] == params[j]) {
      throw DomainError(fmt::format("pair repeats parameter {}", params[i]));
    }
    const double gap = std::fabs(static_cast<double>(params[i] - params[j]));
    const double ratio = norm(values[i] - values[j]) / std::sqrt(gap);
    est.c_emp = std::min(est.c_emp, ratio);
    est.C_emp = std::max(est.C_emp, ratio);
  }
  if (!(est.c_emp > 0.0)) {
    throw InternalError("degenerate curve: two sampled parameters map to the same point");
  }
  const double c2 = est.c_emp * est.c_emp;
  const double C2 = est.C_emp * est.C_emp;
  est.delta_phi = 2.0 * c2 / (3.0 * C2 + 2.0 * c2);
  est.pair_count = pairs.size();
  return est;
}

BilipschitzEstimate empirical_bilipschitz(std::span<const Vec3> values,
                                          std::span<const std::int64_t> params) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(params.size() * (params.size() - 1) / 2);
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (std::size_t j = i + 1; j < params.size(); ++j) pairs.emplace_back(i, j);
  }
  return empirical_bilipschitz(values, params, pairs);
}

BilipschitzEstimate lift_constants(const SnowflakeCurve& curve, std::int64_t M) {
  std::vector<std::int64_t> params(static_cast<std::size_t>(M) + 1);
  for (std::int64_t x = 0; x <= M; ++x) params[static_cast<std::size_t>(x)] = x;
  const auto values = rescale_curve(curve, M, params);
  return empirical_bilipschitz(values, params);
}

SnowflakeLift snowflake_lift(std::int64_t M, const SnowflakeCurve& curve, double delta) {
  if (M < 1) throw DomainError(fmt::format("M must be positive, got {}", M));
  require_open_half(delta);
  const auto values = rescale_curve(curve, M);
  std::vector<std::int64_t> params(static_cast<std::size_t>(M) + 1);
  for (std::int64_t x = 0; x <= M; ++x) params[static_cast<std::size_t>(x)] = x;

  SnowflakeLift lift;
  lift.eta = curve.eta;
  lift.levels = curve.levels;
  lift.constants = empirical_bilipschitz(values, params);
  if (delta > lift.constants.delta_phi) {
    throw PreconditionError(fmt::format(
        "delta = {:.17g} exceeds the achievable delta_phi = {:.17g} for this curve", delta,
        lift.constants.delta_phi));
  }
  const double lambda = std::sqrt(3.0 * delta) / lift.constants.c_emp;
  lift.params = LiftParams{M, lambda, delta};

  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(M));
  for (std::int64_t n = 1; n <= M; ++n) {
    const Vec3& v = values[static_cast<std::size_t>(n)];
    points.emplace_back(std::vector<double>{static_cast<double>(n), lambda * v[0], lambda * v[1],
                                            lambda * v[2]});
  }
  const double m = static_cast<double>(M);
  lift.points = PointSet(std::move(points), ArithmeticMode::certified_float,
                         std::sqrt(m * m + 2.0 * m));
  return lift;
}

SnowflakeLift snowflake_lift(std::int64_t M, const SnowflakeCurve& curve) {
  const BilipschitzEstimate constants = lift_constants(curve, M);
  return snowflake_lift(M, curve, constants.delta_phi);
}

std::vector<double> default_eta_sweep() {
  std::vector<double> etas;
  for (int i = 1; i <= 10; ++i) etas.push_back(0.1 * i);
  return etas;
}

std::vector<EtaSweepEntry> sweep_eta(std::int64_t M, int levels, std::span<const double> etas) {
  std::vector<EtaSweepEntry> out;
  out.reserve(etas.size());
  for (double eta : etas) {
    const SnowflakeCurve curve = build_snowflake_curve(levels, eta);
    out.push_back({eta, lift_constants(curve, M)});
  }
  return out;
}

EtaSweepEntry best_eta(std::span<const EtaSweepEntry> sweep) {
  if (sweep.empty()) throw DomainError("empty eta sweep");
  const EtaSweepEntry* best = &sweep.front();
  for (const auto& e : sweep) {
    if (e.constants.delta_phi > best->constants.delta_phi) best = &e;
  }
  return *best;
}

}  // namespace nearint
