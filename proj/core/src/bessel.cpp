#include "nearint/bessel.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "nearint/errors.hpp"

namespace nearint {
namespace {

void require_args(double nu, double x) {
  if (!std::isfinite(nu) || nu < 0.0) {
    throw DomainError(fmt::format("Bessel order must be finite and >= 0, got {}", nu));
  }
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError(fmt::format("Bessel argument must be finite and >= 0, got {}", x));
  }
}

}  // namespace

double bessel_j_series(double nu, double x) {
  require_args(nu, x);
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const long double half = 0.5L * x;
  const long double q = half * half;
  const long double n = nu;
  long double term = std::pow(half, n) / std::tgamma(n + 1.0L);
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= -q / (static_cast<long double>(k) * (static_cast<long double>(k) + n));
    sum += term;
    if (std::fabs(term) <= 1e-21L * std::fabs(sum) && static_cast<long double>(k) > half) break;
  }
  return static_cast<double>(sum);
}

double bessel_phase(double nu, double x) {
  return static_cast<double>(static_cast<long double>(x) -
                             (2.0L * nu + 1.0L) * std::numbers::pi_v<long double> / 4.0L);
}

double bessel_j_asymptotic(double nu, double x) {
  require_args(nu, x);
  if (x <= 0.0) throw DomainError("asymptotic Bessel expansion needs x > 0");
  const long double mu = 4.0L * nu * nu;
  const long double xl = x;
  // a_k = prod_{j=1..k} (mu - (2j-1)^2) / (k! 8^k); term_k = a_k / x^k.
  long double P = 1.0L;
  long double Q = 0.0L;
  long double term = 1.0L;
  long double last = INFINITY;
  for (int k = 1; k < 200; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    const long double next = term * (mu - odd * odd) / (static_cast<long double>(k) * 8.0L * xl);
    if (next == 0.0L) break;  // terminating series
    if (std::fabs(next) >= last) break;  // past the smallest term
    last = std::fabs(next);
    term = next;
    // Terms alternate between Q (odd k) and P (even k) with signs + - - + + - - ...
    const int r = k % 4;
    if (r == 1) Q += term;
    else if (r == 2) P -= term;
    else if (r == 3) Q -= term;
    else P += term;
    if (std::fabs(term) < 1e-22L) break;
  }
  const long double pi = std::numbers::pi_v<long double>;
  const long double chi = xl - (2.0L * nu + 1.0L) * pi / 4.0L;
  return static_cast<double>(std::sqrt(2.0L / (pi * xl)) * (P * std::cos(chi) - Q * std::sin(chi)));
}

double bessel_j(double nu, double x) {
  require_args(nu, x);
  return x <= kBesselCrossover ? bessel_j_series(nu, x) : bessel_j_asymptotic(nu, x);
}

}  // namespace nearint
