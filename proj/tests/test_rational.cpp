#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "covacap/errors.hpp"
#include "covacap/rational.hpp"

using covacap::InvalidState;
using covacap::ParseError;
using covacap::Rational;

TEST_CASE("construction reduces and normalizes the sign") {
  CHECK(Rational(6, 8) == Rational(3, 4));
  CHECK(Rational(-6, 8) == Rational(-3, 4));
  CHECK(Rational(6, -8) == Rational(-3, 4));
  CHECK(Rational(-6, -8) == Rational(3, 4));
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational(3, 4).num() == 3);
  CHECK(Rational(3, 4).den() == 4);
  CHECK(Rational(6, -8).den() == 4);  // denominator kept positive
  CHECK_THROWS_AS(Rational(1, 0), InvalidState);
}

TEST_CASE("parsing accepts integers, fractions and whitespace") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse(" 7 / 24 ") == Rational(7, 24));
  CHECK(Rational::parse("+2/6") == Rational(1, 3));
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK_THROWS_AS(Rational::parse("a/b"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/"), ParseError);
  CHECK_THROWS_AS(Rational::parse("-"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
}

TEST_CASE("str prints integers without a denominator") {
  CHECK(Rational(3, 4).str() == "3/4");
  CHECK(Rational(-3, 4).str() == "-3/4");
  CHECK(Rational(5).str() == "5");
  CHECK(Rational(8, 4).str() == "2");
  CHECK(Rational(0).str() == "0");
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 6) == Rational(3));
  CHECK_THROWS_AS(Rational(1) / Rational(0), InvalidState);

  // the example distribution sums to exactly one
  Rational sum(0);
  for (const char* w : {"1/4", "1/8", "1/12", "1/8", "1/8", "1/24", "1/8",
                        "1/12", "1/24"})
    sum += Rational::parse(w);
  CHECK(sum == Rational(1));
}

TEST_CASE("comparisons use cross multiplication") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7, 24) > Rational(1, 4));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  CHECK(Rational(2, 4) >= Rational(1, 2));
  CHECK(Rational(1, 3) != Rational(2, 3));
}

TEST_CASE("intermediates wider than int64 still reduce") {
  const std::int64_t big = 3037000500LL;  // isqrt(2^63) + 1, so big^2 > 2^63
  const Rational a(1, big);
  // a * a overflows int64 in the denominator and must throw loudly...
  CHECK_THROWS_AS(a * a, InvalidState);
  // ...but products that cancel back into range succeed.
  CHECK(Rational(big, 2) * Rational(2, big) == Rational(1));
  CHECK(Rational(1, big) + Rational(big - 1, big) == Rational(1));
}

TEST_CASE("to_double matches the quotient") {
  CHECK(Rational(1, 2).to_double() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(Rational(1, 3).to_double() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}
