#include "nearint/spherical.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "nearint/bessel.hpp"
#include "nearint/errors.hpp"

namespace nearint {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

void require_sphere_dim(int d) {
  if (d < 1 || d > kMaxSphereDim) {
    throw DomainError(fmt::format("sphere dimension must lie in [1, {}], got {}", kMaxSphereDim, d));
  }
}

double radial_profile(double nu, double r) {
  if (r == 0.0) return std::pow(std::numbers::pi, nu) / std::tgamma(nu + 1.0);
  return std::pow(r, -nu) * bessel_j(nu, kTwoPi * r);
}

}  // namespace

std::vector<SphereTransformEstimate> sphere_transform_mc(int d, const std::vector<double>& radii,
                                                         std::uint64_t samples,
                                                         std::uint64_t seed) {
  require_sphere_dim(d);
  if (samples < 2) throw DomainError("Monte-Carlo estimate needs at least 2 samples");
  for (double r : radii) {
    if (!std::isfinite(r) || r < 0.0) throw DomainError(fmt::format("bad radius {}", r));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> sum(radii.size(), 0.0);
  std::vector<double> sum_sq(radii.size(), 0.0);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const double g1 = normal(rng);
    double norm2 = g1 * g1;
    for (int i = 0; i < d; ++i) {
      const double g = normal(rng);
      norm2 += g * g;
    }
    const double w1 = g1 / std::sqrt(norm2);
    for (std::size_t j = 0; j < radii.size(); ++j) {
      const double v = std::cos(kTwoPi * radii[j] * w1);
      sum[j] += v;
      sum_sq[j] += v * v;
    }
  }
  const auto n = static_cast<double>(samples);
  std::vector<SphereTransformEstimate> out;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double mean = sum[j] / n;
    const double var = std::max(0.0, (sum_sq[j] - n * mean * mean) / (n - 1.0));
    out.push_back({radii[j], mean, std::sqrt(var / n)});
  }
  return out;
}

std::vector<double> default_calibration_radii() { return {0.25, 0.5, 1.0, 2.0}; }

SphericalCalibration spherical_constant(int d, std::uint64_t samples, std::uint64_t seed,
                                        const std::vector<double>& radii) {
  require_sphere_dim(d);
  if (radii.empty()) throw DomainError("calibration needs at least one radius");
  for (double r : radii) {
    if (!(r > 0.0)) throw DomainError("calibration radii must be positive");
  }
  SphericalCalibration cal;
  cal.d = d;
  cal.nu = 0.5 * (d - 1);
  cal.samples = samples;
  cal.estimates = sphere_transform_mc(d, radii, samples, seed);

  double num = 0.0;
  double den = 0.0;
  for (const auto& e : cal.estimates) {
    const double f = radial_profile(cal.nu, e.radius);
    const double w = 1.0 / (e.std_error * e.std_error);
    num += w * f * e.mean;
    den += w * f * f;
  }
  if (!(den > 0.0)) throw InternalError("calibration radii carry no information about C");
  cal.C = num / den;
  cal.std_error = 1.0 / std::sqrt(den);

  for (const auto& e : cal.estimates) {
    const double f = radial_profile(cal.nu, e.radius);
    const double sigma = std::hypot(e.std_error, f * cal.std_error);
    const double z = (e.mean - cal.C * f) / sigma;
    cal.residual_sigmas.push_back(z);
    if (std::fabs(z) > 3.0) {
      throw InternalError(fmt::format(
          "calibration residual for d = {} at |y| = {} is {:.2f} standard errors", d, e.radius, z));
    }
  }
  return cal;
}

double bessel_energy(const PointSet& set, int k, double C) {
  if (set.empty()) throw DomainError("bessel_energy needs a nonempty point set");
  if (k < 1) throw DomainError(fmt::format("frequency k must be >= 1, got {}", k));
  if (set.dim() < 2) throw DomainError("bessel_energy needs points in R^(d+1) with d >= 1");
  const double nu = 0.5 * (static_cast<double>(set.dim()) - 2.0);
  const double kd = k;
  CompensatedSum pairs;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      const double r = distance(set[i], set[j]).value;
      if (!(r > 0.0)) {
        throw DomainError(fmt::format("points {} and {} coincide", i, j));
      }
      pairs.add(std::pow(kd * r, -nu) * bessel_j(nu, kTwoPi * kd * r));
    }
  }
  return static_cast<double>(set.size()) + 2.0 * C * pairs.value();
}

std::vector<BesselDiagnostic> bessel_diagnostics(const PointSet& set, int k_max, double C) {
  if (k_max < 1) throw DomainError(fmt::format("k_max must be >= 1, got {}", k_max));
  std::vector<BesselDiagnostic> out;
  const int d = static_cast<int>(set.dim()) - 1;
  for (int k = 1; k <= k_max; ++k) {
    out.push_back({d, 0.5 * (d - 1), C, k, bessel_energy(set, k, C)});
  }
  return out;
}

}  // namespace nearint
