#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "nearint/errors.hpp"
#include "nearint/geometry.hpp"

using namespace nearint;
using Dec50 = boost::multiprecision::cpp_dec_float_50;

namespace {

// ||sqrt(n)|| to 50 digits.
Dec50 gap_oracle(std::uint64_t n) {
  const Dec50 root = boost::multiprecision::sqrt(Dec50(n));
  const Dec50 frac = root - boost::multiprecision::floor(root);
  return frac < Dec50(0.5) ? frac : Dec50(1) - frac;
}

PointSet line_set(std::initializer_list<std::int64_t> xs) {
  std::vector<Point> pts;
  for (auto x : xs) pts.push_back(Point::lattice_point({x}));
  return PointSet(std::move(pts), ArithmeticMode::exact_lattice, 1e9);
}

}  // namespace

TEST_CASE("frac_gap examples and properties") {
  CHECK(frac_gap(3.0) == 0.0);
  CHECK(frac_gap(3.5) == 0.5);
  CHECK(frac_gap(std::sqrt(2.0)) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK_THROWS_AS(frac_gap(-1.0), DomainError);
  CHECK_THROWS_AS(frac_gap(INFINITY), DomainError);
  CHECK_THROWS_AS(frac_gap(NAN), DomainError);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    const double g = frac_gap(t);
    CHECK(g >= 0.0);
    CHECK(g <= 0.5);
    for (int m : {1, 5, 37}) CHECK(frac_gap(t + m) == doctest::Approx(g).epsilon(1e-9));
  }
  for (int m = 0; m < 20; ++m) {
    for (double d : {0.0, 0.125, 0.25, 0.5}) {
      CHECK(frac_gap(m + d) == d);
      if (m > 0) CHECK(frac_gap(m - d) == d);
    }
  }
}

TEST_CASE("isqrt matches the floor square root") {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    const auto a = static_cast<std::uint64_t>(isqrt(n));
    CHECK(a * a <= n);
    CHECK((a + 1) * (a + 1) > n);
  }
  const uint128 big = (uint128{1} << 100) + 12345;
  const uint128 a = isqrt(big);
  CHECK(a * a <= big);
  CHECK((a + 1) * (a + 1) > big);
}

TEST_CASE("sqrt_gap_at_least examples") {
  CHECK_FALSE(sqrt_gap_at_least(4, Rational(1, 10)));
  CHECK(sqrt_gap_at_least(2, Rational(1, 4)));
  CHECK(sqrt_gap_at_least(103, Rational(1, 10)));
  CHECK_FALSE(sqrt_gap_at_least(103, Rational(3, 20)));  // gap 0.14889 < 0.15
  CHECK_FALSE(sqrt_gap_at_least(0, Rational(1, 10)));
  CHECK_THROWS_AS(sqrt_gap_at_least(5, Rational(1, 2)), DomainError);
  CHECK_THROWS_AS(sqrt_gap_at_least(5, Rational(0)), DomainError);
}

TEST_CASE("sqrt_gap_at_least agrees with a 50-digit oracle on 10^4 random cases") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::uint64_t> nd(0, 1'000'000'000'000ULL);
  std::uniform_int_distribution<std::int64_t> qd(3, 1'000'000);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t n = i % 4 == 0 ? nd(rng) % 10'000 : nd(rng);
    const std::int64_t q = qd(rng);
    const std::int64_t p = std::uniform_int_distribution<std::int64_t>(1, (q - 1) / 2)(rng);
    const Rational delta(p, q);
    const Dec50 gap = gap_oracle(n);
    const Dec50 d = Dec50(delta.numerator()) / Dec50(delta.denominator());
    if (boost::multiprecision::abs(gap - d) < Dec50("1e-30")) continue;
    ++checked;
    CAPTURE(n);
    CAPTURE(p);
    CAPTURE(q);
    CHECK(sqrt_gap_at_least(n, delta) == (gap >= d));
  }
  CHECK(checked > 9900);
}

TEST_CASE("sqrt_gap_at_least near the threshold") {
  // delta just below and above the true gap of sqrt(n) for n near 10^12.
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = 999'000'000'000ULL + rng() % 1'000'000'000ULL;
    const Dec50 gap = gap_oracle(n);
    if (gap == 0) continue;
    const std::int64_t q = 1'000'000'007;
    const auto p = static_cast<std::int64_t>(boost::multiprecision::floor(gap * q));
    if (p <= 0) continue;
    CHECK(sqrt_gap_at_least(n, Rational(p, q)));
    if (2 * (p + 1) < q) CHECK_FALSE(sqrt_gap_at_least(n, Rational(p + 1, q)));
  }
}

TEST_CASE("distance examples") {
  const Distance d = distance(Point::lattice_point({0, 0}), Point::lattice_point({3, 4}));
  CHECK(d.value == 5.0);
  REQUIRE(d.squared.has_value());
  CHECK(static_cast<std::uint64_t>(*d.squared) == 25);
  CHECK(distance(Point{1.5, 2.0, -3.0}, Point{1.5, 2.0, -3.0}).value == 0.0);
  const double l3 = distance(Point{1.0, 0.0}, Point{0.0, 1.0}, NormSpec::lp(3.0)).value;
  CHECK(l3 == doctest::Approx(1.2599210498948732).epsilon(1e-15));
  CHECK_THROWS_AS(distance(Point{1.0}, Point{1.0, 2.0}), DomainError);
}

TEST_CASE("NormSpec parsing") {
  CHECK(NormSpec::parse("l2").is_euclidean());
  const NormSpec n = NormSpec::parse("lp:3");
  CHECK_FALSE(n.is_euclidean());
  CHECK(n.p == 3.0);
  CHECK(NormSpec::parse(n.to_string()).p == 3.0);
  CHECK_THROWS_AS(NormSpec::parse("lp:1"), DomainError);
  CHECK_THROWS_AS(NormSpec::parse("linf"), DomainError);
  CHECK_THROWS_AS(NormSpec::lp(0.5), DomainError);
}

TEST_CASE("PointSet validation") {
  CHECK_THROWS_AS(PointSet({Point{1.0}, Point{1.0, 2.0}}, ArithmeticMode::certified_float, 5),
                  DomainError);
  CHECK_THROWS_AS(PointSet({Point{1.0}, Point::lattice_point({1})},
                           ArithmeticMode::certified_float, 5),
                  DomainError);
  CHECK_THROWS_AS(PointSet({Point{1.0}}, ArithmeticMode::exact_lattice, 5), DomainError);
  const PointSet s({Point::lattice_point({3, 4}), Point::lattice_point({0, 0})},
                   ArithmeticMode::exact_lattice, 5);
  CHECK(s.contained());
  CHECK_FALSE(PointSet({Point::lattice_point({3, 4})}, ArithmeticMode::exact_lattice, 4.99)
                  .contained());
  CHECK(PointSet({Point::lattice_point({3, 3})}, ArithmeticMode::exact_lattice, 4.2427)
            .contained());  // sqrt(18) = 4.24264
  CHECK_FALSE(PointSet({Point::lattice_point({3, 3})}, ArithmeticMode::exact_lattice, 4.2426)
                  .contained());
  CHECK_FALSE(s.has_duplicates());
  CHECK(PointSet({Point{1.0, 2.0}, Point{1.0, 2.0}}, ArithmeticMode::certified_float, 5)
            .has_duplicates());
}

TEST_CASE("pairwise_verify examples") {
  const VerificationReport single = pairwise_verify(line_set({7}), Rational(1, 10));
  CHECK(single.pass);
  CHECK(single.pair_count == 0);

  const VerificationReport unit = pairwise_verify(line_set({0, 1}), Rational(1, 10));
  CHECK_FALSE(unit.pass);
  CHECK(unit.min_gap == 0.0);
  REQUIRE(unit.worst_pair.has_value());
  CHECK(unit.worst_pair->first == 0);
  CHECK(unit.worst_pair->second == 1);

  const PointSet f({Point{0.0}, Point{1.0}}, ArithmeticMode::certified_float, 1);
  CHECK_FALSE(pairwise_verify(f, 0.1).pass);

  // Exact mode refuses non-Euclidean norms.
  CHECK_THROWS_AS(pairwise_verify(line_set({0, 1}), Rational(1, 10), NormSpec::lp(3)),
                  DomainError);
}

TEST_CASE("pairwise_verify is permutation invariant and thread independent") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> c(-50, 50);
  std::vector<Point> pts;
  for (int i = 0; i < 120; ++i) pts.push_back(Point::lattice_point({c(rng), c(rng), c(rng)}));
  const PointSet a(pts, ArithmeticMode::exact_lattice, 100);
  std::shuffle(pts.begin(), pts.end(), rng);
  const PointSet b(pts, ArithmeticMode::exact_lattice, 100);
  const Rational delta(1, 50);
  const auto ra = pairwise_verify(a, delta, NormSpec::euclidean(), 1);
  const auto rb = pairwise_verify(b, delta, NormSpec::euclidean(), 1);
  CHECK(ra.pass == rb.pass);
  CHECK(ra.min_gap == rb.min_gap);
  CHECK(ra.failing_pairs == rb.failing_pairs);
  for (unsigned threads : {2U, 3U, 8U}) {
    const auto rt = pairwise_verify(a, delta, NormSpec::euclidean(), threads);
    CHECK(rt.pass == ra.pass);
    CHECK(rt.min_gap == ra.min_gap);
    CHECK(rt.worst_pair == ra.worst_pair);
    CHECK(rt.failing_pairs == ra.failing_pairs);
  }
}

TEST_CASE("exact and float verification agree away from the threshold") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> c(-1000, 1000);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> lat;
    std::vector<Point> flt;
    for (int i = 0; i < 6; ++i) {
      const std::int64_t x = c(rng), y = c(rng);
      lat.push_back(Point::lattice_point({x, y}));
      flt.push_back(Point{static_cast<double>(x), static_cast<double>(y)});
    }
    const PointSet L(lat, ArithmeticMode::exact_lattice, 2000);
    const PointSet F(flt, ArithmeticMode::certified_float, 2000);
    const auto rl = pairwise_verify(L, Rational(1, 1000));
    const auto rf = pairwise_verify(F, Rational(1, 1000));
    CHECK(rl.min_gap == doctest::Approx(rf.min_gap).epsilon(1e-12));
    if (std::fabs(rl.min_gap - 1e-3) > 1e-6) CHECK(rl.pass == rf.pass);
  }
}

TEST_CASE("certified float mode never passes on a gap within the slack") {
  // Distance 1 + 5e-10: the gap is below delta + slack.
  const PointSet s({Point{0.0}, Point{1.0 + 5e-10}}, ArithmeticMode::certified_float, 2);
  CHECK_FALSE(pairwise_verify(s, 1e-10).pass);
  const PointSet t({Point{0.0}, Point{1.25}}, ArithmeticMode::certified_float, 2);
  CHECK(pairwise_verify(t, 0.25 - 1e-8).pass);
  CHECK_FALSE(pairwise_verify(t, 0.25).pass);
}

TEST_CASE("default_thread_count reads NEARINT_THREADS") {
  ::setenv("NEARINT_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  ::unsetenv("NEARINT_THREADS");
  CHECK(default_thread_count() >= 1);
}
