#pragma once

#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "epsalg/sequence.hpp"

namespace epsalg {

/// Catalog of built-in test sequences.
struct SeriesSpec {
  enum class Kind { AlternatingHarmonic, Geometric, PowerSeriesPartialSums, Explicit };

  Kind kind = Kind::AlternatingHarmonic;
  long length = 2;  // N + 1 terms

  // Geometric: S_n = limit + scale * ratio^n.
  Scalar limit;
  Scalar scale;
  Scalar ratio;

  // Power series: S_n = sum_{j<=n} coefficients[j] * x^j.
  std::vector<Scalar> coefficients;
  Scalar x;

  std::vector<Scalar> explicit_terms;

  static SeriesSpec alternating_harmonic(long length, Mode mode = Mode::Rational, mpfr_prec_t bits = 53);
  static SeriesSpec geometric(Scalar limit, Scalar scale, Scalar ratio, long length);
  static SeriesSpec power_series(std::vector<Scalar> coefficients, Scalar x, long length);
  static SeriesSpec explicit_terms_of(std::vector<Scalar> terms);

  Mode mode = Mode::Rational;
  mpfr_prec_t precision_bits = 53;
};

SequencePrefix generate(const SeriesSpec& spec);

/**
 * \brief A sequence S_n = S + a_1 Delta^m S_n + ... + a_k Delta^(km) S_n.
 *
 * The relation, the limit and km seed values pin the sequence: the term
 * S_(n+km) enters the relation with coefficient a_k != 0, so the recurrence
 * can be solved forward from the seeds.
 */
struct KernelSpec {
  int m = 1;
  int k = 1;
  std::vector<Scalar> coefficients;  // a_1 .. a_k, a_k nonzero
  Scalar limit;
  std::vector<Scalar> seeds;  // S_0 .. S_(km-1)
};

SequencePrefix generate_kernel(const KernelSpec& spec, long length);

enum class SequenceFormat { Csv, Json };

/// One scalar per CSV line ("p/q" or decimal); '#' lines are comments.
/// Mode is inferred: all-rational input loads as Rational, otherwise Float
/// at the given precision.
SequencePrefix load_sequence(const std::string& path, SequenceFormat format, mpfr_prec_t float_bits = 53);
SequencePrefix parse_sequence(std::istream& in, SequenceFormat format, mpfr_prec_t float_bits = 53,
                              const std::string& fallback_label = "");

void save_sequence(const SequencePrefix& seq, std::ostream& out, SequenceFormat format);

/// Builtin CLI series names: "ln2", "geometric:S,c,lambda", "power:x,c0,c1,...".
std::optional<SeriesSpec> parse_builtin_series(const std::string& name, long length, Mode mode, mpfr_prec_t bits);

/// Small random rationals p/q with p in [-9, 9], q in [1, 9]; the stock
/// inputs of the randomized sweeps.
Scalar random_small_rational(std::mt19937_64& rng);
SequencePrefix random_small_rational_sequence(std::mt19937_64& rng, long length, const std::string& label = "");

}  // namespace epsalg
