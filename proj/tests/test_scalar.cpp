#include <doctest.h>

#include <random>

#include "epsalg/scalar.hpp"

using namespace epsalg;

TEST_CASE("rationals are canonical: lowest terms, positive denominator") {
  const Scalar a = Scalar::rational(6, -8);
  CHECK(a.str() == "-3/4");
  CHECK(Scalar::rational(0, 7).str() == "0");
  CHECK(Scalar::rational(14, 7).str() == "2");
}

TEST_CASE("rational arithmetic is exact: (a + b) - b == a") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 999);
  for (int rep = 0; rep < 200; ++rep) {
    const Scalar a = Scalar::rational(num(rng), den(rng));
    const Scalar b = Scalar::rational(num(rng), den(rng));
    CHECK(((a + b) - b).equals(a));
    if (!b.is_zero()) CHECK(((a * b) / b).equals(a));
  }
}

TEST_CASE("mixed modes are rejected") {
  const Scalar a = Scalar::rational(1, 2);
  const Scalar b = Scalar::floating(0.5, 64);
  CHECK_THROWS_AS(a + b, Error);
}

TEST_CASE("parse accepts p/q and decimal forms") {
  CHECK(Scalar::parse("7/12", Mode::Rational).str() == "7/12");
  CHECK(Scalar::parse("-5", Mode::Rational).str() == "-5");
  CHECK(Scalar::parse("0.5", Mode::Float, 64).to_double() == doctest::Approx(0.5));
  CHECK(Scalar::parse("1/4", Mode::Float, 64).to_double() == doctest::Approx(0.25));
  CHECK_THROWS_AS(Scalar::parse("abc", Mode::Rational), Error);
  CHECK_THROWS_AS(Scalar::parse("abc", Mode::Float, 64), Error);
  CHECK_THROWS_AS(Scalar::parse("1/0", Mode::Rational), Error);
}

TEST_CASE("exact_str round-trips floats bit-exactly") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  for (int rep = 0; rep < 100; ++rep) {
    Scalar x = Scalar::floating(dist(rng), 113);
    x /= Scalar::floating(3.0, 113);
    const Scalar back = Scalar::parse(x.exact_str(), Mode::Float, 113);
    CHECK(back.equals(x));
  }
}

TEST_CASE("float precision follows the operands") {
  const Scalar a = Scalar::floating(1.0, 128);
  const Scalar b = Scalar::floating(3.0, 128);
  const Scalar c = a / b;
  CHECK(c.precision_bits() == 128);
}

TEST_CASE("zero policy: rational exact, float thresholded") {
  const ZeroPolicy exact = ZeroPolicy::exact();
  CHECK(is_effectively_zero(Scalar::rational(0), Scalar::rational(1), exact));
  CHECK_FALSE(is_effectively_zero(Scalar::rational(1, 7), Scalar::rational(1), exact));

  const ZeroPolicy fp = ZeroPolicy::for_precision(53);
  // tau = rho = 2^-26 at 53 bits.
  CHECK(is_effectively_zero(Scalar::floating(1e-40, 53), Scalar::floating(1.0, 53), fp));
  CHECK_FALSE(is_effectively_zero(Scalar::floating(1e-3, 53), Scalar::floating(1.0, 53), fp));
  // Relative branch: tiny against a tiny scale is not zero, but tiny against
  // a huge scale is.
  CHECK(is_effectively_zero(Scalar::floating(1.0, 53), Scalar::floating(1e9, 53), fp));

  const ZeroPolicy wide = ZeroPolicy::for_precision(128);
  CHECK(is_effectively_zero(Scalar::floating(1e-40, 128), Scalar::floating(1.0, 128), wide));
  CHECK_FALSE(is_effectively_zero(Scalar::floating(1e-15, 128), Scalar::floating(1.0, 128), wide));
}

TEST_CASE("spec example: 1e-40 at 53 bits with tau=1e-30, rho=1e-20 is zero") {
  ZeroPolicy policy;
  policy.mode = Mode::Float;
  policy.tau = Scalar::parse("1e-30", Mode::Float, 53);
  policy.rho = Scalar::parse("1e-20", Mode::Float, 53);
  CHECK(is_effectively_zero(Scalar::parse("1e-40", Mode::Float, 53), Scalar::floating(1.0, 53), policy));
}
