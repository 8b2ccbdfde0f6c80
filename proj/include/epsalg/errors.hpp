#pragma once

#include <stdexcept>
#include <string>

namespace epsalg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, long line_number)
      : Error("parse error at line " + std::to_string(line_number) + ": " + what), line(line_number) {}
  long line;
};

struct EmptyFile : Error {
  using Error::Error;
};

struct InvalidSpec : Error {
  using Error::Error;
};

struct SeedCountMismatch : Error {
  using Error::Error;
};

struct DegenerateRecurrence : Error {
  using Error::Error;
};

/// Zero (or effectively zero) denominator in a transformation or recursion.
struct Breakdown : Error {
  Breakdown(const std::string& what, int k_ = 0, long n_ = 0) : Error(what), k(k_), n(n_) {}
  int k;
  long n;
};

struct SingularSystem : Error {
  using Error::Error;
};

struct DimensionTooSmall : Error {
  using Error::Error;
};

struct GaugeUnderdetermined : Error {
  using Error::Error;
};

}  // namespace epsalg
