#include "nearint/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "nearint/errors.hpp"

namespace nearint {
namespace {


std::int64_t checked_mul(std::int64_t a, std::int64_t b, std::string_view text) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw DomainError(fmt::format("rational '{}' does not fit in 64 bits", text));
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b, std::string_view text) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw DomainError(fmt::format("rational '{}' does not fit in 64 bits", text));
  }
  return out;
}

std::int64_t pow10(int e, std::string_view text) {
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) out = checked_mul(out, 10, text);
  return out;
}

std::int64_t parse_integer(std::string_view s, std::string_view text) {
  if (s.empty()) throw DomainError(fmt::format("malformed rational '{}'", text));
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  if (pos == s.size()) throw DomainError(fmt::format("malformed rational '{}'", text));
  std::int64_t value = 0;
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos]))) {
      throw DomainError(fmt::format("malformed rational '{}'", text));
    }
    value = checked_add(checked_mul(value, 10, text), s[pos] - '0', text);
  }
  return negative ? -value : value;
}

Rational parse_decimal(std::string_view s, std::string_view text) {
  bool negative = false;
  std::size_t pos = 0;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    pos = 1;
  }
  std::int64_t mantissa = 0;
  int frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = checked_add(checked_mul(mantissa, 10, text), c - '0', text);
      if (seen_point) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw DomainError(fmt::format("malformed rational '{}'", text));
  int exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') {
      throw DomainError(fmt::format("malformed rational '{}'", text));
    }
    const std::int64_t e = parse_integer(s.substr(pos + 1), text);
    if (e > 400 || e < -400) {
      throw DomainError(fmt::format("rational '{}' does not fit in 64 bits", text));
    }
    exponent = static_cast<int>(e);
  }
  const int scale = exponent - frac_digits;
  Rational value;
  if (scale >= 0) {
    value = Rational(checked_mul(mantissa, pow10(scale, text), text));
  } else {
    // Strip common factors of ten before building the denominator so that
    // "0.50000000000000000000" still fits.
    int shift = -scale;
    while (shift > 0 && mantissa % 10 == 0 && mantissa != 0) {
      mantissa /= 10;
      --shift;
    }
    if (mantissa == 0) shift = 0;
    value = Rational(mantissa, pow10(shift, text));
  }
  return negative ? -value : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw DomainError("empty rational");
  const auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    const std::int64_t num = parse_integer(s.substr(0, slash), text);
    const std::int64_t den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw DomainError(fmt::format("zero denominator in '{}'", text));
    return Rational(num, den);
  }
  return parse_decimal(s, text);
}

std::string to_string(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return fmt::format("{}/{}", value.numerator(), value.denominator());
}

void require_open_half(const Rational& delta, std::string_view what) {
  if (delta <= 0 || delta >= Rational(1, 2)) {
    throw DomainError(fmt::format("{} must lie in (0, 1/2), got {}", what, to_string(delta)));
  }
}

void require_open_half(double delta, std::string_view what) {
  if (!std::isfinite(delta) || delta <= 0.0 || delta >= 0.5) {
    throw DomainError(fmt::format("{} must lie in (0, 1/2), got {}", what, delta));
  }
}

}  // namespace nearint
