#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <string>

#include "epsalg/errors.hpp"

namespace epsalg {

enum class Mode { Rational, Float };

/**
 * \brief Exact rational or configurable-precision floating value.
 *
 * The single arithmetic abstraction used throughout the library. Rational
 * values are kept in lowest terms with positive denominator (GMP canonical
 * form). Float values carry their MPFR precision in bits; a binary operation
 * produces a result at the larger of the two operand precisions. Mixing the
 * two modes in one operation is a programming error and throws.
 */
class Scalar {
 public:
  Scalar();  // rational zero
  Scalar(const Scalar& other);
  Scalar(Scalar&& other) noexcept;
  Scalar& operator=(const Scalar& other);
  Scalar& operator=(Scalar&& other) noexcept;
  ~Scalar();

  static Scalar rational(long num, long den = 1);
  static Scalar floating(double value, mpfr_prec_t bits);
  static Scalar from_mpz(const mpz_t z, Mode mode, mpfr_prec_t bits = 53);
  static Scalar from_mpq(const mpq_t q);
  static Scalar zero(Mode mode, mpfr_prec_t bits = 53);
  static Scalar one(Mode mode, mpfr_prec_t bits = 53);
  static Scalar from_long(long value, Mode mode, mpfr_prec_t bits = 53);
  /// 2^e, exact in both modes.
  static Scalar power_of_two(long e, Mode mode, mpfr_prec_t bits = 53);

  /// Parses "p", "-p/q" as rationals; decimal/hex literals as floats.
  static Scalar parse(const std::string& text, Mode mode, mpfr_prec_t bits = 53);
  static bool looks_rational(const std::string& text);

  Mode mode() const { return mode_; }
  bool is_rational() const { return mode_ == Mode::Rational; }
  mpfr_prec_t precision_bits() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b);
  Scalar& operator-=(const Scalar& b);
  Scalar& operator*=(const Scalar& b);
  Scalar& operator/=(const Scalar& b);
  Scalar operator-() const;
  Scalar abs() const;
  Scalar reciprocal() const;

  bool is_zero() const;
  int sign() const;
  bool is_finite() const;  // always true for rationals
  bool equals(const Scalar& other) const;
  int compare(const Scalar& other) const;
  int compare_abs(const Scalar& other) const;
  bool operator==(const Scalar& other) const { return equals(other); }
  bool operator!=(const Scalar& other) const { return !equals(other); }
  bool operator<(const Scalar& other) const { return compare(other) < 0; }

  /// Display form: "p/q" (or "p") for rationals, shortest round-trip decimal
  /// for floats.
  std::string str() const;
  /// Exact serialisation: same as str() for rationals, hexadecimal float
  /// literal for floats (round-trips bit-exactly at equal precision).
  std::string exact_str() const;
  double to_double() const;

  /// Converts a rational to a float of the given precision (rounds to
  /// nearest). Floats are re-rounded to the requested precision.
  Scalar to_float(mpfr_prec_t bits) const;

  const mpq_t& raw_rational() const;
  const mpfr_t& raw_float() const;

 private:
  void init_rational();
  void init_float(mpfr_prec_t bits);
  void destroy() noexcept;
  static void require_same_mode(const Scalar& a, const Scalar& b);

  Mode mode_;
  union {
    mpq_t q_;
    mpfr_t f_;
  };
};

/**
 * \brief Policy deciding when a value counts as zero for breakdown detection.
 *
 * Rational mode tests exact zero; thresholds are ignored. Float mode flags x
 * when |x| <= tau or |x| <= rho * |scale|. Defaults for a given precision are
 * tau = rho = 2^-(bits/2).
 */
struct ZeroPolicy {
  Mode mode = Mode::Rational;
  Scalar tau;
  Scalar rho;

  static ZeroPolicy exact();
  static ZeroPolicy for_precision(mpfr_prec_t bits);
  static ZeroPolicy for_mode(Mode mode, mpfr_prec_t bits);
};

bool is_effectively_zero(const Scalar& x, const Scalar& scale, const ZeroPolicy& policy);

}  // namespace epsalg
