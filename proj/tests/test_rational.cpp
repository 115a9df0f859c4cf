#include <doctest.h>

#include "nearint/errors.hpp"
#include "nearint/rational.hpp"

using nearint::parse_rational;
using nearint::Rational;

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(parse_rational("1/20000") == Rational(1, 20000));
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("0.00005") == Rational(1, 20000));
  CHECK(parse_rational("5e-5") == Rational(1, 20000));
  CHECK(parse_rational("5E-5") == Rational(1, 20000));
  CHECK(parse_rational("1e6") == Rational(1000000));
  CHECK(parse_rational("1000000") == Rational(1000000));
  CHECK(parse_rational("+0.25") == Rational(1, 4));
  CHECK(parse_rational(".5") == Rational(1, 2));
}

TEST_CASE("parse_rational rejects malformed or oversized input") {
  for (const char* bad : {"", "abc", "1/", "/2", "1/0", "1.2.3", "1e", "--1", "0x10", "1 / 2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), nearint::DomainError);
  }
  CHECK_THROWS_AS(parse_rational("1e40"), nearint::DomainError);
  CHECK_THROWS_AS(parse_rational("0.000000000000000000000001"), nearint::DomainError);
  CHECK_THROWS_AS(parse_rational("99999999999999999999"), nearint::DomainError);
}

TEST_CASE("to_string round-trips") {
  for (const Rational r : {Rational(1, 20000), Rational(-7, 3), Rational(5), Rational(0)}) {
    CHECK(parse_rational(nearint::to_string(r)) == r);
  }
  CHECK(nearint::to_string(Rational(1, 20000)) == "1/20000");
  CHECK(nearint::to_string(Rational(6)) == "6");
}

TEST_CASE("require_open_half") {
  CHECK_NOTHROW(nearint::require_open_half(Rational(1, 10)));
  CHECK_THROWS_AS(nearint::require_open_half(Rational(0)), nearint::DomainError);
  CHECK_THROWS_AS(nearint::require_open_half(Rational(1, 2)), nearint::DomainError);
  CHECK_THROWS_AS(nearint::require_open_half(-0.1), nearint::DomainError);
  CHECK_THROWS_AS(nearint::require_open_half(0.5), nearint::DomainError);
  CHECK_NOTHROW(nearint::require_open_half(0.4999));
}
