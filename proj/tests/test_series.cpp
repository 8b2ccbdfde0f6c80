#include <doctest.h>

#include <random>
#include <sstream>

#include "epsalg/series.hpp"
#include "epsalg/shanks.hpp"

using namespace epsalg;

TEST_CASE("alternating harmonic partial sums") {
  const SequencePrefix s = generate(SeriesSpec::alternating_harmonic(4));
  REQUIRE(s.size() == 4);
  CHECK(s[0].equals(Scalar::rational(1)));
  CHECK(s[1].equals(Scalar::rational(1, 2)));
  CHECK(s[2].equals(Scalar::rational(5, 6)));
  CHECK(s[3].equals(Scalar::rational(7, 12)));
}

TEST_CASE("geometric series terms") {
  const SequencePrefix s =
      generate(SeriesSpec::geometric(Scalar::rational(2), Scalar::rational(3), Scalar::rational(1, 2), 3));
  REQUIRE(s.size() == 3);
  CHECK(s[0].equals(Scalar::rational(5)));
  CHECK(s[1].equals(Scalar::rational(7, 2)));
  CHECK(s[2].equals(Scalar::rational(11, 4)));
}

TEST_CASE("explicit series copies verbatim") {
  const SequencePrefix s = generate(
      SeriesSpec::explicit_terms_of({Scalar::rational(1), Scalar::rational(2), Scalar::rational(3)}));
  REQUIRE(s.size() == 3);
  CHECK(s[2].equals(Scalar::rational(3)));
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(
      generate(SeriesSpec::geometric(Scalar::rational(0), Scalar::rational(1), Scalar::rational(1), 5)),
      InvalidSpec);
  CHECK_THROWS_AS(generate(SeriesSpec::power_series({}, Scalar::rational(2), 5)), InvalidSpec);
  SeriesSpec too_short = SeriesSpec::alternating_harmonic(1);
  CHECK_THROWS_AS(generate(too_short), InvalidSpec);
}

TEST_CASE("power series partial sums of a divergent input") {
  // sum 1 * 2^j: S_n = 2^(n+1) - 1.
  const SequencePrefix s = generate(SeriesSpec::power_series(
      {Scalar::rational(1), Scalar::rational(1), Scalar::rational(1), Scalar::rational(1)}, Scalar::rational(2), 4));
  CHECK(s[3].equals(Scalar::rational(15)));
}

TEST_CASE("kernel generator: geometric example") {
  KernelSpec spec;
  spec.m = 1;
  spec.k = 1;
  spec.coefficients = {Scalar::rational(-2)};
  spec.limit = Scalar::rational(2);
  spec.seeds = {Scalar::rational(5)};
  const SequencePrefix s = generate_kernel(spec, 4);
  REQUIRE(s.size() == 4);
  CHECK(s[0].equals(Scalar::rational(5)));
  CHECK(s[1].equals(Scalar::rational(7, 2)));
  CHECK(s[2].equals(Scalar::rational(11, 4)));
  CHECK(s[3].equals(Scalar::rational(19, 8)));
}

TEST_CASE("kernel generator: m=2 doubling sequence") {
  // S_n = Delta^2 S_n with seeds 1, 2 gives 2^n.
  KernelSpec spec;
  spec.m = 2;
  spec.k = 1;
  spec.coefficients = {Scalar::rational(1)};
  spec.limit = Scalar::rational(0);
  spec.seeds = {Scalar::rational(1), Scalar::rational(2)};
  const SequencePrefix s = generate_kernel(spec, 6);
  for (long n = 0; n < 6; ++n) {
    CHECK(s[n].equals(Scalar::rational(1L << n)));
  }
  for (long n = 0; n + 2 <= 5; ++n) {
    CHECK(forward_difference(s, 2, n).equals(s[n]));
  }
}

TEST_CASE("kernel generator validates the relation for random specs") {
  std::mt19937_64 rng(202);
  for (int m = 1; m <= 3; ++m) {
    for (int k = 1; k <= 2; ++k) {
      KernelSpec spec;
      spec.m = m;
      spec.k = k;
      for (int i = 0; i < k; ++i) spec.coefficients.push_back(random_small_rational(rng));
      if (spec.coefficients.back().is_zero()) spec.coefficients.back() = Scalar::rational(1, 3);
      spec.limit = random_small_rational(rng);
      for (int i = 0; i < k * m; ++i) spec.seeds.push_back(random_small_rational(rng));
      const SequencePrefix s = generate_kernel(spec, 13);
      // The generator re-checks the relation internally; verify one instance
      // here as well.
      Scalar acc = spec.limit;
      for (int i = 1; i <= k; ++i) {
        acc += spec.coefficients[static_cast<std::size_t>(i - 1)] * forward_difference(s, i * m, 0);
      }
      CHECK(acc.equals(s[0]));
    }
  }
}

TEST_CASE("kernel generator rejects bad specs") {
  KernelSpec spec;
  spec.m = 1;
  spec.k = 1;
  spec.coefficients = {Scalar::rational(0)};
  spec.limit = Scalar::rational(0);
  spec.seeds = {Scalar::rational(1)};
  CHECK_THROWS_AS(generate_kernel(spec, 5), InvalidSpec);
  spec.coefficients = {Scalar::rational(2)};
  spec.seeds = {Scalar::rational(1), Scalar::rational(2)};
  CHECK_THROWS_AS(generate_kernel(spec, 5), SeedCountMismatch);
}

TEST_CASE("csv parsing: rationals, floats, comments, errors") {
  {
    std::istringstream in("1\n1/2\n5/6\n");
    const SequencePrefix s = parse_sequence(in, SequenceFormat::Csv);
    REQUIRE(s.size() == 3);
    CHECK(s.mode() == Mode::Rational);
    CHECK(s[2].equals(Scalar::rational(5, 6)));
  }
  {
    std::istringstream in("0.5\n0.25\n");
    const SequencePrefix s = parse_sequence(in, SequenceFormat::Csv, 64);
    CHECK(s.mode() == Mode::Float);
    CHECK(s[1].to_double() == doctest::Approx(0.25));
  }
  {
    std::istringstream in("# header comment\n3/4\n\n2\n");
    const SequencePrefix s = parse_sequence(in, SequenceFormat::Csv);
    REQUIRE(s.size() == 2);
    CHECK(s.mode() == Mode::Rational);
  }
  {
    std::istringstream in("abc\n");
    CHECK_THROWS_AS(parse_sequence(in, SequenceFormat::Csv), ParseError);
  }
  {
    std::istringstream in("1\nxyz\n");
    try {
      parse_sequence(in, SequenceFormat::Csv);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
    }
  }
  {
    std::istringstream in("# only comments\n");
    CHECK_THROWS_AS(parse_sequence(in, SequenceFormat::Csv), EmptyFile);
  }
}

TEST_CASE("json sequence round-trip") {
  std::mt19937_64 rng(303);
  const SequencePrefix s = random_small_rational_sequence(rng, 7, "sample");
  std::ostringstream out;
  save_sequence(s, out, SequenceFormat::Json);
  std::istringstream in(out.str());
  const SequencePrefix back = parse_sequence(in, SequenceFormat::Json);
  REQUIRE(back.size() == s.size());
  CHECK(back.label() == "sample");
  for (long j = 0; j < s.size(); ++j) CHECK(back[j].equals(s[j]));
}

TEST_CASE("builtin series names") {
  auto ln2 = parse_builtin_series("ln2", 4, Mode::Rational, 53);
  REQUIRE(ln2.has_value());
  CHECK(generate(*ln2)[3].equals(Scalar::rational(7, 12)));

  auto geom = parse_builtin_series("geometric:2,3,1/2", 3, Mode::Rational, 53);
  REQUIRE(geom.has_value());
  CHECK(generate(*geom)[2].equals(Scalar::rational(11, 4)));

  auto pw = parse_builtin_series("power:2,1,1,1,1", 4, Mode::Rational, 53);
  REQUIRE(pw.has_value());
  CHECK(generate(*pw)[3].equals(Scalar::rational(15)));

  CHECK_FALSE(parse_builtin_series("nope", 4, Mode::Rational, 53).has_value());
}
