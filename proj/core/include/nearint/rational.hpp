#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace nearint {

using Rational = boost::rational<std::int64_t>;

// Parses "p/q", an integer, or a decimal with optional exponent ("0.00005",
// "5e-5") into an exact rational. Throws DomainError on malformed input or
// when the value does not fit in 64-bit numerator/denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

inline double to_double(const Rational& value) {
  return static_cast<double>(value.numerator()) /
         static_cast<double>(value.denominator());
}

inline long double to_long_double(const Rational& value) {
  return static_cast<long double>(value.numerator()) /
         static_cast<long double>(value.denominator());
}

// Throws DomainError unless 0 < delta < 1/2.
void require_open_half(const Rational& delta, std::string_view what = "delta");
void require_open_half(double delta, std::string_view what = "delta");

}  // namespace nearint
