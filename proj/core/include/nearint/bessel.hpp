#pragma once

namespace nearint {

// Bessel function of the first kind J_nu(x) for nu >= 0, x >= 0.
// Power series up to kBesselCrossover, Hankel asymptotic expansion above it.
// Relative error is about 1e-12 away from zeros of J_nu for x up to 1e5.
inline constexpr double kBesselCrossover = 20.0;

double bessel_j(double nu, double x);

// sum_k (-1)^k (x/2)^(2k+nu) / (k! Gamma(k+nu+1)).
double bessel_j_series(double nu, double x);

// sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)], chi = x - (2 nu + 1) pi / 4,
// with the series P, Q truncated at their smallest term (or where they
// terminate, for half-integer nu).
double bessel_j_asymptotic(double nu, double x);

// The phase chi = x - (2 nu + 1) pi / 4 of the leading asymptotic term.
double bessel_phase(double nu, double x);

}  // namespace nearint
