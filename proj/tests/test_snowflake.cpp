#include <doctest.h>

#include <cmath>

#include "nearint/errors.hpp"
#include "nearint/snowflake.hpp"

using namespace nearint;

namespace {

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

std::vector<std::int64_t> iota_params(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = lo; x <= hi; ++x) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("build_snowflake_curve examples") {
  const auto flat = build_snowflake_curve(1, 0.0);
  REQUIRE(flat.values.size() == 3);
  CHECK(flat.values[1] == Vec3{0.5, 0.0, 0.0});

  const auto bent = build_snowflake_curve(1, 1.0);
  CHECK(norm(bent.values[1]) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  const Vec3 d{bent.values[1][0] - 0.5, bent.values[1][1], bent.values[1][2]};
  CHECK(norm(d) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(d[0] == doctest::Approx(0.0));  // orthogonal to the segment

  const auto flat2 = build_snowflake_curve(2, 0.0);
  REQUIRE(flat2.values.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(flat2.values[i][0] == doctest::Approx(0.25 * i));
    CHECK(flat2.values[i][1] == 0.0);
    CHECK(flat2.values[i][2] == 0.0);
  }

  CHECK_THROWS_AS(build_snowflake_curve(0, 1.0), DomainError);
  CHECK_THROWS_AS(build_snowflake_curve(29, 1.0), DomainError);
  CHECK_THROWS_AS(build_snowflake_curve(4, -1.0), DomainError);
}

TEST_CASE("midpoint displacements are orthogonal with the scheduled size") {
  const double eta = 0.7;
  const auto c = build_snowflake_curve(6, eta);
  for (int n = 0; n < 6; ++n) {
    const std::size_t step = std::size_t{64} >> n;
    for (std::size_t i = 0; i + step <= 64; i += step) {
      const Vec3& a = c.values[i];
      const Vec3& b = c.values[i + step];
      const Vec3& m = c.values[i + step / 2];
      const Vec3 disp{m[0] - 0.5 * (a[0] + b[0]), m[1] - 0.5 * (a[1] + b[1]),
                      m[2] - 0.5 * (a[2] + b[2])};
      const Vec3 seg{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
      CHECK(norm(disp) == doctest::Approx(eta * std::pow(2.0, -0.5 * (n + 1))).epsilon(1e-12));
      CHECK(std::fabs(disp[0] * seg[0] + disp[1] * seg[1] + disp[2] * seg[2]) < 1e-12);
    }
  }
}

TEST_CASE("rescale_curve examples") {
  const auto c = build_snowflake_curve(10, 0.5);
  const std::vector<std::int64_t> zero{0};
  CHECK(rescale_curve(c, 64, zero)[0] == Vec3{0.0, 0.0, 0.0});

  // M = 2^(levels-2): every parameter is a table point.
  const std::int64_t M = 256;
  const auto params = iota_params(-M, M);
  const auto values = rescale_curve(c, M, params);
  const std::size_t mid = c.values.size() / 2;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const std::size_t idx = mid + static_cast<std::size_t>(params[i] * 2);
    for (int k = 0; k < 3; ++k) {
      CHECK(values[i][k] == std::sqrt(2.0 * M) * (c.values[idx][k] - c.values[mid][k]));
    }
  }

  CHECK_THROWS_AS(rescale_curve(c, 600), PreconditionError);
  CHECK_THROWS_AS(rescale_curve(c, 0), DomainError);
  const std::vector<std::int64_t> outside{65};
  CHECK_THROWS_AS(rescale_curve(c, 64, outside), DomainError);
}

TEST_CASE("rescale_curve of the straight curve is the closed-form affine map") {
  const auto c = build_snowflake_curve(12, 0.0);
  for (std::int64_t M : {1, 7, 100, 1000}) {
    const auto params = iota_params(-M, M);
    const auto v = rescale_curve(c, M, params);
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double want = std::sqrt(2.0 * M) * static_cast<double>(params[i]) / (2.0 * M);
      CHECK(v[i][0] == doctest::Approx(want).epsilon(1e-12).scale(1e-300));
      CHECK(std::fabs(v[i][0] - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
      CHECK(v[i][1] == 0.0);
      CHECK(v[i][2] == 0.0);
    }
  }
}

TEST_CASE("empirical_bilipschitz examples") {
  std::vector<Vec3> line;
  const auto params = iota_params(0, 4);
  for (auto x : params) line.push_back({static_cast<double>(x), 0.0, 0.0});
  const auto est = empirical_bilipschitz(line, params);
  CHECK(est.pair_count == 10);
  CHECK(est.c_emp == doctest::Approx(1.0));
  CHECK(est.C_emp == doctest::Approx(2.0));
  CHECK(est.delta_phi == doctest::Approx(1.0 / 7.0));

  const std::vector<std::pair<std::size_t, std::size_t>> one{{1, 3}};
  const auto single = empirical_bilipschitz(line, params, one);
  CHECK(single.c_emp == single.C_emp);
  CHECK(single.delta_phi == doctest::Approx(0.4));

  const auto c = build_snowflake_curve(10, 0.4);
  const auto p64 = iota_params(0, 64);
  auto v = rescale_curve(c, 64, p64);
  const auto base = empirical_bilipschitz(v, p64);
  for (auto& x : v) x = {3.5 * x[0], 3.5 * x[1], 3.5 * x[2]};
  CHECK(empirical_bilipschitz(v, p64).delta_phi == doctest::Approx(base.delta_phi).epsilon(1e-12));

  const std::vector<std::int64_t> repeated{1, 1};
  const std::vector<Vec3> two{{0, 0, 0}, {1, 0, 0}};
  CHECK_THROWS_AS(empirical_bilipschitz(two, repeated), DomainError);
  const std::vector<Vec3> same{{1, 0, 0}, {1, 0, 0}};
  const std::vector<std::int64_t> distinct{1, 2};
  CHECK_THROWS_AS(empirical_bilipschitz(same, distinct), InternalError);
}

TEST_CASE("snowflake_lift examples") {
  const auto c = build_snowflake_curve(12, 0.5);
  const auto one = snowflake_lift(1, c);
  CHECK(one.points.size() == 1);
  CHECK(pairwise_verify(one.points, 0.1).pass);

  // Straight curve, M = 2: r/a = 3 delta exactly, the window's left edge.
  const auto flat = build_snowflake_curve(12, 0.0);
  const auto two = snowflake_lift(2, flat, 0.1);
  CHECK(two.points.size() == 2);
  const double d = distance(two.points[0], two.points[1]).value;
  CHECK(d * d == doctest::Approx(1.0 + 0.3).epsilon(1e-12));
  CHECK(pairwise_verify(two.points, 0.1).pass);

  CHECK_THROWS_AS(snowflake_lift(64, c, 0.45), PreconditionError);
}

TEST_CASE("snowflake_lift at delta_phi: distances have integer part |n - n'|") {
  const auto sweep = sweep_eta(64, 20, default_eta_sweep());
  CHECK(sweep.size() == 10);
  const auto best = best_eta(sweep);
  CHECK(best.constants.delta_phi > 0.0);
  const auto curve = build_snowflake_curve(20, best.eta);
  const auto lift = snowflake_lift(64, curve);
  CHECK(lift.params.delta == best.constants.delta_phi);
  CHECK(lift.params.lambda == doctest::Approx(std::sqrt(3.0 * lift.params.delta) /
                                              lift.constants.c_emp));
  CHECK(lift.params.lambda <= std::sqrt(2.0 * (1.0 - lift.params.delta)) / lift.constants.C_emp *
                                  (1.0 + 1e-12));
  CHECK(lift.points.radius_bound() <= std::sqrt(64.0 * 64.0 + 128.0));
  CHECK(lift.points.contained());
  CHECK(pairwise_verify(lift.points, lift.params.delta).pass);
  for (std::size_t i = 0; i < lift.points.size(); ++i) {
    for (std::size_t j = i + 1; j < lift.points.size(); ++j) {
      const double d = distance(lift.points[i], lift.points[j]).value;
      CHECK(std::floor(d) == static_cast<double>(j - i));
      const double frac = d - std::floor(d);
      CHECK(frac > lift.params.delta);
      CHECK(frac < 1.0 - lift.params.delta);
    }
  }
}
