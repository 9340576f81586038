#include <catch_amalgamated.hpp>

#include "fockcalc/random_gen.hpp"
#include "fockcalc/scalar.hpp"

using namespace fockcalc;

TEST_CASE("pi powers stay separate terms") {
  const Scalar s = Scalar::pi_power(-1) + Scalar::pi();
  REQUIRE(s.terms().size() == 2);
  CHECK(s.terms().count(-1) == 1);
  CHECK(s.terms().count(1) == 1);
  CHECK((Scalar(2) * Scalar::pi() + Scalar(-2) * Scalar::pi()).is_zero());
}

TEST_CASE("i squared is -1") {
  CHECK(Scalar::imag_unit() * Scalar::imag_unit() == Scalar(-1));
  CHECK(Scalar::imag_unit().conj() == -Scalar::imag_unit());
}

TEST_CASE("inverse of a single term") {
  const Scalar s = Scalar(GaussianRational(Rational(2, 3), Rational(1)), 2);
  CHECK(s * s.inverse() == Scalar(1));
  CHECK_THROWS_AS((Scalar(1) + Scalar::pi()).inverse(), std::domain_error);
}

TEST_CASE("rational text round trip") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(rational_to_string(Rational(6, 4)) == "3/2");
  CHECK(rational_to_string(Rational(5)) == "5");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("factorials and binomials") {
  CHECK(factorial(5) == 120);
  CHECK(binomial(6, 2) == 15);
}

TEST_CASE("printing") {
  CHECK(to_string(Scalar::pi_power(-1)) == "(1/π)");
  CHECK(to_string(Scalar(0)) == "0");
}

TEST_CASE("ring axioms on random scalars") {
  Rng rng(seed_from_env());
  for (int t = 0; t < 200; ++t) {
    const Scalar a = random_scalar(rng) + random_scalar(rng);
    const Scalar b = random_scalar(rng);
    const Scalar c = random_scalar(rng) + random_scalar(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    CHECK((a * b).conj() == a.conj() * b.conj());
  }
}
