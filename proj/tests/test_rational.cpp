#include <catch2/catch_amalgamated.hpp>

#include "homog3/rational.hpp"
#include "test_support.hpp"

using namespace homog3;

TEST_CASE("parsing and formatting") {
  CHECK(Rational::parse("3/6").str() == "1/2");
  CHECK(Rational::parse("-4/2").str() == "-2");
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational::parse("+5/10") == Rational(1, 2));
  CHECK(Rational(6, -4).str() == "-3/2");  // sign normalized to the numerator
  CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("2e3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
}

TEST_CASE("field axioms hold exactly on random fractions") {
  testsup::Rng rng(20240811);
  for (int trial = 0; trial < 500; ++trial) {
    Rational a = rng.rational(1000, 997), b = rng.rational(1000, 997), c = rng.rational(1000, 997);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + Rational(0) == a);
    CHECK(a * Rational(1) == a);
    CHECK(a - a == Rational(0));
    if (!a.is_zero()) {
      CHECK(a * a.inverse() == Rational(1));
      CHECK((b / a) * a == b);
    }
  }
}

TEST_CASE("values stay reduced with positive denominators") {
  testsup::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Rational a = rng.rational(50, 50), b = rng.nonzero_rational(50, 50);
    Rational q = a / b;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
    CHECK(g == 1);
    CHECK(q.den() > 0);
  }
}

TEST_CASE("ordering is total and compatible with arithmetic") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-7, 2) < Rational(-3));
  CHECK(Rational(2, 4) == Rational(1, 2));
  testsup::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Rational a = rng.rational(30, 13), b = rng.rational(30, 13), c = rng.rational(30, 13);
    if (a < b) CHECK(a + c < b + c);
  }
}

TEST_CASE("exact square roots") {
  Rational s;
  CHECK(Rational::sqrt_exact(Rational(9, 4), &s));
  CHECK(s == Rational(3, 2));
  CHECK_FALSE(Rational::sqrt_exact(Rational(2), nullptr));
  CHECK_FALSE(Rational::sqrt_exact(Rational(-1), nullptr));
  CHECK(Rational::sqrt_exact(Rational(0), &s));
  CHECK(s.is_zero());
}
