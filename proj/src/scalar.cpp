#include "epsalg/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>

namespace epsalg {

namespace {

mpfr_prec_t clamp_prec(mpfr_prec_t bits) {
  return bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits;
}

}  // namespace

void Scalar::init_rational() {
  mode_ = Mode::Rational;
  mpq_init(q_);
}

void Scalar::init_float(mpfr_prec_t bits) {
  mode_ = Mode::Float;
  mpfr_init2(f_, clamp_prec(bits));
}

void Scalar::destroy() noexcept {
  if (mode_ == Mode::Rational) {
    mpq_clear(q_);
  } else {
    mpfr_clear(f_);
  }
}

Scalar::Scalar() { init_rational(); }

Scalar::Scalar(const Scalar& other) {
  if (other.mode_ == Mode::Rational) {
    init_rational();
    mpq_set(q_, other.q_);
  } else {
    init_float(mpfr_get_prec(other.f_));
    mpfr_set(f_, other.f_, MPFR_RNDN);
  }
}

Scalar::Scalar(Scalar&& other) noexcept {
  mode_ = other.mode_;
  if (mode_ == Mode::Rational) {
    std::memcpy(&q_, &other.q_, sizeof(q_));
    other.init_rational();
  } else {
    std::memcpy(&f_, &other.f_, sizeof(f_));
    other.init_rational();
  }
}

Scalar& Scalar::operator=(const Scalar& other) {
  if (this == &other) return *this;
  Scalar tmp(other);
  *this = std::move(tmp);
  return *this;
}

Scalar& Scalar::operator=(Scalar&& other) noexcept {
  if (this == &other) return *this;
  destroy();
  mode_ = other.mode_;
  if (mode_ == Mode::Rational) {
    std::memcpy(&q_, &other.q_, sizeof(q_));
  } else {
    std::memcpy(&f_, &other.f_, sizeof(f_));
  }
  other.init_rational();
  return *this;
}

Scalar::~Scalar() { destroy(); }

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  Scalar s;
  mpq_set_si(s.q_, num, 1);
  Scalar d;
  mpq_set_si(d.q_, den, 1);
  mpq_div(s.q_, s.q_, d.q_);
  return s;
}

Scalar Scalar::floating(double value, mpfr_prec_t bits) {
  Scalar s;
  s.destroy();
  s.init_float(bits);
  mpfr_set_d(s.f_, value, MPFR_RNDN);
  return s;
}

Scalar Scalar::from_mpz(const mpz_t z, Mode mode, mpfr_prec_t bits) {
  if (mode == Mode::Rational) {
    Scalar s;
    mpq_set_z(s.q_, z);
    return s;
  }
  Scalar s;
  s.destroy();
  s.init_float(bits);
  mpfr_set_z(s.f_, z, MPFR_RNDN);
  return s;
}

Scalar Scalar::from_mpq(const mpq_t q) {
  Scalar s;
  mpq_set(s.q_, q);
  mpq_canonicalize(s.q_);
  return s;
}

Scalar Scalar::zero(Mode mode, mpfr_prec_t bits) { return from_long(0, mode, bits); }

Scalar Scalar::one(Mode mode, mpfr_prec_t bits) { return from_long(1, mode, bits); }

Scalar Scalar::from_long(long value, Mode mode, mpfr_prec_t bits) {
  if (mode == Mode::Rational) return rational(value);
  Scalar s;
  s.destroy();
  s.init_float(bits);
  mpfr_set_si(s.f_, value, MPFR_RNDN);
  return s;
}

Scalar Scalar::power_of_two(long e, Mode mode, mpfr_prec_t bits) {
  if (mode == Mode::Rational) {
    Scalar s = rational(1);
    if (e >= 0) {
      mpq_mul_2exp(s.q_, s.q_, static_cast<mp_bitcnt_t>(e));
    } else {
      mpq_div_2exp(s.q_, s.q_, static_cast<mp_bitcnt_t>(-e));
    }
    return s;
  }
  Scalar s = from_long(1, Mode::Float, bits);
  mpfr_mul_2si(s.f_, s.f_, e, MPFR_RNDN);
  return s;
}

bool Scalar::looks_rational(const std::string& text) {
  const char* p = text.c_str();
  while (std::isspace(static_cast<unsigned char>(*p))) ++p;
  if (*p == '+' || *p == '-') ++p;
  if (!std::isdigit(static_cast<unsigned char>(*p))) return false;
  while (std::isdigit(static_cast<unsigned char>(*p))) ++p;
  if (*p == '/') {
    ++p;
    if (!std::isdigit(static_cast<unsigned char>(*p))) return false;
    while (std::isdigit(static_cast<unsigned char>(*p))) ++p;
  }
  while (std::isspace(static_cast<unsigned char>(*p))) ++p;
  return *p == '\0';
}

Scalar Scalar::parse(const std::string& text, Mode mode, mpfr_prec_t bits) {
  std::string trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.erase(trimmed.begin());
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.pop_back();
  if (trimmed.empty()) throw Error("empty scalar literal");

  if (mode == Mode::Rational) {
    if (!looks_rational(trimmed)) throw Error("not a rational literal: \"" + trimmed + "\"");
    Scalar s;
    if (mpq_set_str(s.q_, trimmed.c_str(), 10) != 0) throw Error("not a rational literal: \"" + trimmed + "\"");
    if (mpz_sgn(mpq_denref(s.q_)) == 0) throw Error("rational with zero denominator: \"" + trimmed + "\"");
    mpq_canonicalize(s.q_);
    return s;
  }

  if (looks_rational(trimmed)) {
    // Allow "p/q" in float mode: parse exactly, then round once.
    return parse(trimmed, Mode::Rational).to_float(bits);
  }
  Scalar s;
  s.destroy();
  s.init_float(bits);
  // Base 0 accepts decimal and hexadecimal ("0x...p...") literals.
  if (mpfr_set_str(s.f_, trimmed.c_str(), 0, MPFR_RNDN) != 0) {
    throw Error("not a numeric literal: \"" + trimmed + "\"");
  }
  return s;
}

mpfr_prec_t Scalar::precision_bits() const {
  if (mode_ != Mode::Float) throw Error("precision_bits on a rational value");
  return mpfr_get_prec(f_);
}

void Scalar::require_same_mode(const Scalar& a, const Scalar& b) {
  if (a.mode_ != b.mode_) throw Error("mixed scalar modes in one operation");
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar::require_same_mode(a, b);
  if (a.mode_ == Mode::Rational) {
    Scalar r;
    mpq_add(r.q_, a.q_, b.q_);
    return r;
  }
  Scalar r;
  r.destroy();
  r.init_float(std::max(mpfr_get_prec(a.f_), mpfr_get_prec(b.f_)));
  mpfr_add(r.f_, a.f_, b.f_, MPFR_RNDN);
  return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  Scalar::require_same_mode(a, b);
  if (a.mode_ == Mode::Rational) {
    Scalar r;
    mpq_sub(r.q_, a.q_, b.q_);
    return r;
  }
  Scalar r;
  r.destroy();
  r.init_float(std::max(mpfr_get_prec(a.f_), mpfr_get_prec(b.f_)));
  mpfr_sub(r.f_, a.f_, b.f_, MPFR_RNDN);
  return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar::require_same_mode(a, b);
  if (a.mode_ == Mode::Rational) {
    Scalar r;
    mpq_mul(r.q_, a.q_, b.q_);
    return r;
  }
  Scalar r;
  r.destroy();
  r.init_float(std::max(mpfr_get_prec(a.f_), mpfr_get_prec(b.f_)));
  mpfr_mul(r.f_, a.f_, b.f_, MPFR_RNDN);
  return r;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  Scalar::require_same_mode(a, b);
  if (b.is_zero()) throw Error("scalar division by zero");
  if (a.mode_ == Mode::Rational) {
    Scalar r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
  }
  Scalar r;
  r.destroy();
  r.init_float(std::max(mpfr_get_prec(a.f_), mpfr_get_prec(b.f_)));
  mpfr_div(r.f_, a.f_, b.f_, MPFR_RNDN);
  return r;
}

Scalar& Scalar::operator+=(const Scalar& b) { return *this = *this + b; }
Scalar& Scalar::operator-=(const Scalar& b) { return *this = *this - b; }
Scalar& Scalar::operator*=(const Scalar& b) { return *this = *this * b; }
Scalar& Scalar::operator/=(const Scalar& b) { return *this = *this / b; }

Scalar Scalar::operator-() const {
  Scalar r(*this);
  if (mode_ == Mode::Rational) {
    mpq_neg(r.q_, r.q_);
  } else {
    mpfr_neg(r.f_, r.f_, MPFR_RNDN);
  }
  return r;
}

Scalar Scalar::abs() const {
  Scalar r(*this);
  if (mode_ == Mode::Rational) {
    mpq_abs(r.q_, r.q_);
  } else {
    mpfr_abs(r.f_, r.f_, MPFR_RNDN);
  }
  return r;
}

Scalar Scalar::reciprocal() const {
  return one(mode_, mode_ == Mode::Float ? precision_bits() : 53) / *this;
}

bool Scalar::is_zero() const {
  if (mode_ == Mode::Rational) return mpq_sgn(q_) == 0;
  return mpfr_zero_p(f_) != 0;
}

int Scalar::sign() const {
  if (mode_ == Mode::Rational) return mpq_sgn(q_);
  return mpfr_sgn(f_);
}

bool Scalar::is_finite() const {
  if (mode_ == Mode::Rational) return true;
  return mpfr_number_p(f_) != 0;
}

bool Scalar::equals(const Scalar& other) const {
  if (mode_ != other.mode_) return false;
  if (mode_ == Mode::Rational) return mpq_equal(q_, other.q_) != 0;
  if (mpfr_nan_p(f_) || mpfr_nan_p(other.f_)) return false;
  return mpfr_equal_p(f_, other.f_) != 0;
}

int Scalar::compare(const Scalar& other) const {
  require_same_mode(*this, other);
  if (mode_ == Mode::Rational) return mpq_cmp(q_, other.q_);
  return mpfr_cmp(f_, other.f_);
}

int Scalar::compare_abs(const Scalar& other) const { return abs().compare(other.abs()); }

std::string Scalar::str() const {
  if (mode_ == Mode::Rational) {
    char* raw = mpq_get_str(nullptr, 10, q_);
    std::string out(raw);
    std::free(raw);
    return out;
  }
  if (!is_finite()) return mpfr_nan_p(f_) ? "nan" : (mpfr_sgn(f_) < 0 ? "-inf" : "inf");
  // Enough decimal digits to round-trip at this precision.
  const long digits = static_cast<long>(mpfr_get_prec(f_) * 0.30103) + 3;
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", static_cast<int>(digits), f_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

std::string Scalar::exact_str() const {
  if (mode_ == Mode::Rational) return str();
  if (!is_finite()) return str();
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%Ra", f_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

double Scalar::to_double() const {
  if (mode_ == Mode::Rational) return mpq_get_d(q_);
  return mpfr_get_d(f_, MPFR_RNDN);
}

Scalar Scalar::to_float(mpfr_prec_t bits) const {
  Scalar r;
  r.destroy();
  r.init_float(bits);
  if (mode_ == Mode::Rational) {
    mpfr_set_q(r.f_, q_, MPFR_RNDN);
  } else {
    mpfr_set(r.f_, f_, MPFR_RNDN);
  }
  return r;
}

const mpq_t& Scalar::raw_rational() const {
  if (mode_ != Mode::Rational) throw Error("raw_rational on a float value");
  return q_;
}

const mpfr_t& Scalar::raw_float() const {
  if (mode_ != Mode::Float) throw Error("raw_float on a rational value");
  return f_;
}

ZeroPolicy ZeroPolicy::exact() {
  ZeroPolicy p;
  p.mode = Mode::Rational;
  return p;
}

ZeroPolicy ZeroPolicy::for_precision(mpfr_prec_t bits) {
  ZeroPolicy p;
  p.mode = Mode::Float;
  p.tau = Scalar::power_of_two(-(bits / 2), Mode::Float, bits);
  p.rho = p.tau;
  return p;
}

ZeroPolicy ZeroPolicy::for_mode(Mode mode, mpfr_prec_t bits) {
  return mode == Mode::Rational ? exact() : for_precision(bits);
}

bool is_effectively_zero(const Scalar& x, const Scalar& scale, const ZeroPolicy& policy) {
  if (policy.mode == Mode::Rational) return x.is_zero();
  if (x.mode() != Mode::Float) throw Error("float zero policy applied to a rational value");
  const Scalar ax = x.abs();
  if (ax.compare(policy.tau) <= 0) return true;
  return ax.compare(policy.rho * scale.abs()) <= 0;
}

}  // namespace epsalg
