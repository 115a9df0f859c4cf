#pragma once

#include <cstdint>
#include <vector>

#include "nearint/geometry.hpp"

namespace nearint {

inline constexpr int kMaxSphereDim = 8;
inline constexpr std::uint64_t kDefaultSphereSamples = 10'000'000;

// Average of cos(2 pi r omega_1) over uniform omega on the unit sphere
// S^d in R^(d+1), i.e. the Fourier transform of the normalized surface
// measure at a point y with |y| = r.
struct SphereTransformEstimate {
  double radius = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
};

std::vector<SphereTransformEstimate> sphere_transform_mc(int d, const std::vector<double>& radii,
                                                         std::uint64_t samples,
                                                         std::uint64_t seed);

struct SphericalCalibration {
  int d = 0;
  double nu = 0.0;         // (d - 1) / 2
  double C = 0.0;          // fitted constant
  double std_error = 0.0;  // standard error of C
  std::uint64_t samples = 0;
  std::vector<SphereTransformEstimate> estimates;
  std::vector<double> residual_sigmas;  // (mc - C f(r)) / sigma per radius
};

// Default calibration radii. |y| = 1 alone is not enough: J_{1/2}(2 pi) = 0,
// so for d = 2 the reference point carries no information about C.
std::vector<double> default_calibration_radii();

// Fits C_d in  mean(r) = C_d r^(-nu) J_nu(2 pi r)  by weighted least squares
// over the radii (k = 1), using `samples` Monte-Carlo points. Throws
// InternalError when any residual exceeds 3 standard errors.
SphericalCalibration spherical_constant(int d, std::uint64_t samples = kDefaultSphereSamples,
                                        std::uint64_t seed = 1,
                                        const std::vector<double>& radii =
                                            default_calibration_radii());

struct BesselDiagnostic {
  int d = 0;  // points live in R^(d+1)
  double nu = 0.0;
  double C = 0.0;
  int k = 0;
  double energy = 0.0;
};

// n + C k^(-nu) sum_{i != j} r_ij^(-nu) J_nu(2 pi k r_ij), nu = (dim - 2)/2,
// with compensated summation over pairs. Needs dim >= 2 and distinct points.
double bessel_energy(const PointSet& set, int k, double C);

// bessel_energy for k = 1..k_max.
std::vector<BesselDiagnostic> bessel_diagnostics(const PointSet& set, int k_max, double C);

}  // namespace nearint
