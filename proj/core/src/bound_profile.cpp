#include "nearint/bound_profile.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "nearint/errors.hpp"

namespace nearint {

BoundProfile bound_profile(int d) {
  if (d < 1) throw DomainError(fmt::format("dimension must be >= 1, got {}", d));
  switch (d % 4) {
    case 3:
      return {d, Rational(d, 2), false};
    case 0:
      return {d, Rational(d - 1, 2), true};
    default:
      return {d, Rational(d - 1, 2), false};
  }
}

double BoundProfile::evaluate(double X) const {
  const double base = std::pow(X, to_double(exponent));
  return log_factor ? base * std::log(X) : base;
}

std::string BoundProfile::to_string() const {
  const std::string power = exponent.denominator() == 1
                                ? fmt::format("X^{}", exponent.numerator())
                                : fmt::format("X^({})", nearint::to_string(exponent));
  return log_factor ? power + " log X" : power;
}

double recursion_integral(int d, double X) {
  const BoundProfile profile = bound_profile(d);
  if (!std::isfinite(X) || X < 1.0) {
    throw DomainError(fmt::format("recursion_integral needs finite X >= 1, got {}", X));
  }
  // t = e^u: f_d(t) t^(-d/2-1) dt = e^(u s) u^L du with s = exponent - d/2.
  const double s = to_double(profile.exponent) - 0.5 * d;
  const bool log_factor = profile.log_factor;
  auto integrand = [s, log_factor](double u) {
    const double v = std::exp(u * s);
    return log_factor ? v * u : v;
  };
  const double lo = std::log(2.0);
  const double hi = std::log(4.0 * X);
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, lo, hi, 15, 1e-12, &error);
  if (!(error <= 1e-8 * std::fabs(value))) {
    throw InternalError(fmt::format("quadrature did not converge (error estimate {})", error));
  }
  return value;
}

}  // namespace nearint
