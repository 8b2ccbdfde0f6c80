#include <doctest.h>

#include <random>

#include "epsalg/sequence.hpp"
#include "epsalg/series.hpp"

using namespace epsalg;

namespace {

SequencePrefix ln2_sums(long count) {
  return generate(SeriesSpec::alternating_harmonic(count));
}

// Recursive definition Delta^(i+1) S_n = Delta^i S_(n+1) - Delta^i S_n,
// kept as an independent oracle for the binomial path.
Scalar recursive_difference(const SequencePrefix& seq, long order, long start) {
  if (order == 0) return seq[start];
  return recursive_difference(seq, order - 1, start + 1) - recursive_difference(seq, order - 1, start);
}

}  // namespace

TEST_CASE("forward differences: worked values") {
  const SequencePrefix s2 = ln2_sums(2);
  CHECK(forward_difference(s2, 0, 0).equals(Scalar::rational(1)));

  const SequencePrefix s3 = ln2_sums(3);
  CHECK(forward_difference(s3, 1, 1).equals(Scalar::rational(1, 3)));

  const SequencePrefix s4 = ln2_sums(4);
  CHECK(forward_difference(s4, 3, 0).equals(Scalar::rational(-17, 12)));

  CHECK_THROWS_AS(forward_difference(s4, 3, 1), IndexOutOfRange);
}

TEST_CASE("difference_sequence: worked values") {
  const SequencePrefix s3 = ln2_sums(3);
  const SequencePrefix d1 = difference_sequence(s3, 1);
  REQUIRE(d1.size() == 2);
  CHECK(d1[0].equals(Scalar::rational(-1, 2)));
  CHECK(d1[1].equals(Scalar::rational(1, 3)));

  const SequencePrefix constant({Scalar::rational(3), Scalar::rational(3), Scalar::rational(3)});
  const SequencePrefix dc = difference_sequence(constant, 1);
  CHECK(dc[0].is_zero());
  CHECK(dc[1].is_zero());

  const SequencePrefix s5 = ln2_sums(5);
  const SequencePrefix d2 = difference_sequence(s5, 2);
  REQUIRE(d2.size() == 3);
  CHECK(d2[0].equals(Scalar::rational(5, 6)));
  CHECK(d2[1].equals(Scalar::rational(-7, 12)));
  CHECK(d2[2].equals(Scalar::rational(9, 20)));

  CHECK_THROWS_AS(difference_sequence(s5, 5), IndexOutOfRange);
}

TEST_CASE("binomial and recursive definitions agree exactly") {
  std::mt19937_64 rng(101);
  const SequencePrefix seq = random_small_rational_sequence(rng, 10);
  for (long i = 0; i <= 9; ++i) {
    for (long n = 0; n + i <= 9; ++n) {
      CHECK(forward_difference(seq, i, n).equals(recursive_difference(seq, i, n)));
    }
  }
}

TEST_CASE("difference operator is linear") {
  std::mt19937_64 rng(102);
  const SequencePrefix s = random_small_rational_sequence(rng, 9);
  const SequencePrefix t = random_small_rational_sequence(rng, 9);
  const Scalar a = Scalar::rational(3, 7);
  const Scalar b = Scalar::rational(-5, 2);
  std::vector<Scalar> mix;
  for (long j = 0; j < 9; ++j) mix.push_back(a * s[j] + b * t[j]);
  const SequencePrefix combined(mix);
  for (long i = 0; i <= 8; ++i) {
    for (long n = 0; n + i <= 8; ++n) {
      const Scalar lhs = forward_difference(combined, i, n);
      const Scalar rhs = a * forward_difference(s, i, n) + b * forward_difference(t, i, n);
      CHECK(lhs.equals(rhs));
    }
  }
}

TEST_CASE("Delta^i annihilates polynomials of degree < i") {
  // S_n = 2n^2 - 3n + 5, degree 2.
  std::vector<Scalar> terms;
  for (long n = 0; n < 10; ++n) terms.push_back(Scalar::rational(2 * n * n - 3 * n + 5));
  const SequencePrefix poly(terms);
  for (long i = 3; i <= 6; ++i) {
    for (long n = 0; n + i <= 9; ++n) {
      CHECK(forward_difference(poly, i, n).is_zero());
    }
  }
  // Degree-2 differences of order 2 are the constant 2*2! = 4.
  for (long n = 0; n + 2 <= 9; ++n) {
    CHECK(forward_difference(poly, 2, n).equals(Scalar::rational(4)));
  }
}

TEST_CASE("difference table matches the single-value operator") {
  std::mt19937_64 rng(103);
  const SequencePrefix seq = random_small_rational_sequence(rng, 8);
  const DifferenceTable table(seq);
  for (long d = 0; d <= 7; ++d) {
    for (long j = 0; j + d <= 7; ++j) {
      CHECK(table.diff(d, j).equals(forward_difference(seq, d, j)));
    }
  }
  CHECK_THROWS_AS(table.diff(4, 4), IndexOutOfRange);
}
