#include "epsalg/sequence.hpp"

namespace epsalg {

SequencePrefix::SequencePrefix(std::vector<Scalar> terms, std::string label)
    : terms_(std::move(terms)), label_(std::move(label)) {
  for (std::size_t j = 1; j < terms_.size(); ++j) {
    if (terms_[j].mode() != terms_[0].mode()) throw Error("sequence mixes scalar modes");
  }
}

void SequencePrefix::push_back(Scalar term) {
  if (!terms_.empty() && term.mode() != terms_[0].mode()) throw Error("sequence mixes scalar modes");
  terms_.push_back(std::move(term));
}

const Scalar& SequencePrefix::operator[](long j) const {
  if (j < 0 || j >= size()) {
    throw IndexOutOfRange("sequence index " + std::to_string(j) + " outside 0.." + std::to_string(max_index()));
  }
  return terms_[static_cast<std::size_t>(j)];
}

Mode SequencePrefix::mode() const {
  if (terms_.empty()) return Mode::Rational;
  return terms_[0].mode();
}

mpfr_prec_t SequencePrefix::precision_bits() const {
  if (mode() != Mode::Float) return 53;
  return terms_[0].precision_bits();
}

Scalar forward_difference(const SequencePrefix& seq, long order, long start) {
  if (order < 0 || start < 0) throw IndexOutOfRange("negative difference order or start index");
  if (start + order > seq.max_index()) {
    throw IndexOutOfRange("Delta^" + std::to_string(order) + " at " + std::to_string(start) + " needs term " +
                          std::to_string(start + order) + " but N = " + std::to_string(seq.max_index()));
  }
  const Mode mode = seq.mode();
  const mpfr_prec_t prec = seq.precision_bits();
  Scalar sum = Scalar::zero(mode, prec);
  mpz_t binom;
  mpz_init(binom);
  for (long j = 0; j <= order; ++j) {
    mpz_bin_uiui(binom, static_cast<unsigned long>(order), static_cast<unsigned long>(j));
    Scalar term = Scalar::from_mpz(binom, mode, prec) * seq[start + j];
    if ((order - j) % 2 != 0) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  mpz_clear(binom);
  return sum;
}

SequencePrefix difference_sequence(const SequencePrefix& seq, long order) {
  if (order > seq.max_index()) {
    throw IndexOutOfRange("difference order " + std::to_string(order) + " exceeds N = " +
                          std::to_string(seq.max_index()));
  }
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(seq.max_index() - order + 1));
  for (long j = 0; j + order <= seq.max_index(); ++j) {
    out.push_back(forward_difference(seq, order, j));
  }
  std::string label = seq.label().empty() ? "" : "D^" + std::to_string(order) + " " + seq.label();
  return SequencePrefix(std::move(out), std::move(label));
}

DifferenceTable::DifferenceTable(const SequencePrefix& seq) : seq_(seq) {
  const long n = seq.max_index();
  rows_.resize(static_cast<std::size_t>(n + 1));
  for (long d = 0; d <= n; ++d) {
    auto& row = rows_[static_cast<std::size_t>(d)];
    row.reserve(static_cast<std::size_t>(n - d + 1));
    for (long j = 0; j + d <= n; ++j) {
      row.push_back(forward_difference(seq, d, j));
    }
  }
}

const Scalar& DifferenceTable::diff(long d, long j) const {
  if (d < 0 || j < 0 || d + j > max_index()) {
    throw IndexOutOfRange("Delta^" + std::to_string(d) + " S_" + std::to_string(j) + " outside prefix of length " +
                          std::to_string(max_index() + 1));
  }
  return rows_[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)];
}

}  // namespace epsalg
