#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "nearint/bessel.hpp"
#include "nearint/errors.hpp"
#include "nearint/spherical.hpp"

using namespace nearint;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

double reference_j(double nu, double x) {
  return static_cast<double>(boost::math::cyl_bessel_j(Big(nu), Big(x)));
}

double exact_constant(int d) {
  const double nu = 0.5 * (d - 1);
  return std::tgamma(nu + 1.0) * std::pow(std::numbers::pi, -nu);
}

PointSet random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c(dim);
    for (double& x : c) x = u(rng);
    pts.emplace_back(std::move(c));
  }
  return PointSet(std::move(pts), ArithmeticMode::certified_float, scale * std::sqrt(dim));
}

}  // namespace

TEST_CASE("bessel_j matches a 50-digit reference up to x = 1e5") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> logx(std::log(1e-3), std::log(1e5));
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5}) {
    for (int i = 0; i < 150; ++i) {
      const double x = std::exp(logx(rng));
      const double ref = reference_j(nu, x);
      const double got = bessel_j(nu, x);
      const double envelope = std::min(1.0, std::sqrt(2.0 / (std::numbers::pi * x)));
      CAPTURE(nu);
      CAPTURE(x);
      if (std::fabs(ref) > 0.05 * envelope) {
        CHECK(std::fabs(got - ref) <= 1e-10 * std::fabs(ref));
      } else {
        CHECK(std::fabs(got - ref) <= 1e-11 * envelope);
      }
    }
  }
}

TEST_CASE("series and asymptotic forms agree near the crossover") {
  for (double nu : {0.0, 1.0, 2.5}) {
    for (double x : {18.0, 20.0, 22.0}) {
      CHECK(std::fabs(bessel_j_series(nu, x) - bessel_j_asymptotic(nu, x)) < 1e-11);
    }
  }
}

TEST_CASE("half-integer orders have closed forms") {
  for (double x : {0.3, 1.0, 7.5, 40.0, 1234.5}) {
    const double s = std::sqrt(2.0 / (std::numbers::pi * x));
    CHECK(bessel_j(0.5, x) == doctest::Approx(s * std::sin(x)).epsilon(1e-11));
    CHECK(bessel_j(1.5, x) ==
          doctest::Approx(s * (std::sin(x) / x - std::cos(x))).epsilon(1e-10));
  }
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel_j(1.0, 0.0) == 0.0);
}

TEST_CASE("asymptotic phase") {
  CHECK(bessel_phase(0.0, 10.0) == doctest::Approx(10.0 - std::numbers::pi / 4));
  CHECK(bessel_phase(1.5, 10.0) == doctest::Approx(10.0 - std::numbers::pi));
  // Leading term sqrt(2/(pi x)) cos(chi) for large x.
  const double x = 5e4;
  CHECK(bessel_j(2.0, x) == doctest::Approx(std::sqrt(2.0 / (std::numbers::pi * x)) *
                                            std::cos(bessel_phase(2.0, x)))
                                .epsilon(1e-4));
}

TEST_CASE("bessel domain checks") {
  CHECK_THROWS_AS(bessel_j(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(0.0, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(0.0, NAN), DomainError);
  CHECK_THROWS_AS(bessel_j_asymptotic(0.0, 0.0), DomainError);
}

TEST_CASE("sphere transform Monte Carlo matches J_0 on the circle") {
  const auto est = sphere_transform_mc(1, {0.5, 1.0}, 400000, 9);
  for (const auto& e : est) {
    CHECK(std::fabs(e.mean - reference_j(0.0, 2.0 * std::numbers::pi * e.radius)) <=
          4.0 * e.std_error);
  }
  const auto a = sphere_transform_mc(2, {1.0}, 1000, 5);
  const auto b = sphere_transform_mc(2, {1.0}, 1000, 5);
  CHECK(a[0].mean == b[0].mean);
}

TEST_CASE("spherical_constant matches the exact constant") {
  for (int d = 1; d <= 4; ++d) {
    const auto cal = spherical_constant(d, 1'000'000, 100 + d);
    CAPTURE(d);
    CHECK(cal.nu == 0.5 * (d - 1));
    CHECK(std::fabs(cal.C - exact_constant(d)) <= 3.0 * cal.std_error);
    // y -> 0 limit: C r^(-nu) J_nu(2 pi r) -> 1.
    const double r = 1e-6;
    CHECK(cal.C * std::pow(r, -cal.nu) * bessel_j(cal.nu, 2 * std::numbers::pi * r) ==
          doctest::Approx(1.0).epsilon(4.0 * cal.std_error / cal.C));
  }
  const auto c2 = spherical_constant(2, 1'000'000, 77, {0.5, 1.0, 2.0});
  for (double z : c2.residual_sigmas) CHECK(std::fabs(z) <= 3.0);
  CHECK_THROWS_AS(spherical_constant(0), DomainError);
  CHECK_THROWS_AS(spherical_constant(9), DomainError);
}

TEST_CASE("bessel_energy examples") {
  const PointSet one({Point{0.3, -0.2}}, ArithmeticMode::certified_float, 1);
  for (int k = 1; k <= 5; ++k) CHECK(bessel_energy(one, k, 1.0) == 1.0);

  const double r = 0.77;
  const PointSet two({Point{0.0, 0.0}, Point{r, 0.0}}, ArithmeticMode::certified_float, 1);
  for (int k = 1; k <= 10; ++k) {
    const double e = bessel_energy(two, k, 1.0);
    CHECK(e == doctest::Approx(2.0 + 2.0 * reference_j(0.0, 2 * std::numbers::pi * k * r))
                   .epsilon(1e-12));
    CHECK(e >= 0.0);
  }

  const PointSet dup({Point{1.0, 2.0}, Point{1.0, 2.0}}, ArithmeticMode::certified_float, 3);
  CHECK_THROWS_AS(bessel_energy(dup, 1, 1.0), DomainError);
  const PointSet line({Point{1.0}, Point{2.5}}, ArithmeticMode::certified_float, 3);
  CHECK_THROWS_AS(bessel_energy(line, 1, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_energy(two, 0, 1.0), DomainError);
}

TEST_CASE("bessel_energy equals a Monte-Carlo spherical integral") {
  std::mt19937_64 rng(31);
  const double C = exact_constant(2);
  for (int inst = 0; inst < 5; ++inst) {
    const PointSet s = random_points(rng, 20, 3, 1.0);
    for (int k : {1, 3}) {
      const double energy = bessel_energy(s, k, C);
      CHECK(energy >= -1e-6);
      // Average of |sum_j exp(2 pi i k <p_j, w>)|^2 over uniform w on S^2.
      std::normal_distribution<double> g;
      const int samples = 40000;
      double sum = 0.0;
      double sum_sq = 0.0;
      for (int i = 0; i < samples; ++i) {
        double w[3] = {g(rng), g(rng), g(rng)};
        const double n = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
        double re = 0.0;
        double im = 0.0;
        for (const Point& p : s) {
          const double phase = 2 * std::numbers::pi * k * (p[0] * w[0] + p[1] * w[1] + p[2] * w[2]) / n;
          re += std::cos(phase);
          im += std::sin(phase);
        }
        const double v = re * re + im * im;
        sum += v;
        sum_sq += v * v;
      }
      const double mean = sum / samples;
      const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
      CAPTURE(inst);
      CAPTURE(k);
      CHECK(std::fabs(mean - energy) <= 4.0 * se);
    }
  }
}

TEST_CASE("bessel_energy is nonnegative on random sets") {
  std::mt19937_64 rng(41);
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t dim = 2 + inst % 3;
    const int d = static_cast<int>(dim) - 1;
    const PointSet s = random_points(rng, 2 + inst % 19, dim, 3.0);
    for (const auto& diag : bessel_diagnostics(s, 20, exact_constant(d))) {
      CHECK(diag.energy >= -1e-6 * static_cast<double>(s.size()));
      CHECK(diag.d == d);
    }
  }
}
