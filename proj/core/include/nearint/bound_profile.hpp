#pragma once

#include <string>

#include "nearint/rational.hpp"

namespace nearint {

// Upper-bound growth profile f_d(X) = X^exponent (log X)^[log_factor]:
//   d = 3 (mod 4): X^(d/2)
//   d = 0 (mod 4): X^((d-1)/2) log X
//   otherwise:     X^((d-1)/2)
struct BoundProfile {
  int d = 0;
  Rational exponent;
  bool log_factor = false;

  double evaluate(double X) const;
  std::string to_string() const;
};

BoundProfile bound_profile(int d);

// Integral of f_d(t) t^(-d/2 - 1) over [2, 4X], computed by adaptive
// Gauss-Kronrod quadrature in the variable u = log t.
double recursion_integral(int d, double X);

}  // namespace nearint
