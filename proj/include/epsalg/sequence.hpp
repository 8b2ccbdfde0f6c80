#pragma once

#include <string>
#include <vector>

#include "epsalg/scalar.hpp"

namespace epsalg {

/**
 * \brief Finite prefix S_0..S_N of a scalar sequence.
 *
 * All terms share one Scalar mode; indexing is zero based.
 */
class SequencePrefix {
 public:
  SequencePrefix() = default;
  explicit SequencePrefix(std::string label) : label_(std::move(label)) {}
  SequencePrefix(std::vector<Scalar> terms, std::string label = "");

  void push_back(Scalar term);

  long size() const { return static_cast<long>(terms_.size()); }
  /// Largest valid index N (size - 1); -1 when empty.
  long max_index() const { return size() - 1; }
  bool empty() const { return terms_.empty(); }
  const Scalar& operator[](long j) const;
  const Scalar& at(long j) const { return (*this)[j]; }
  const std::vector<Scalar>& terms() const { return terms_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  Mode mode() const;
  mpfr_prec_t precision_bits() const;

 private:
  std::vector<Scalar> terms_;
  std::string label_;
};

/// Delta^i S_n by the binomial expansion sum_{j=0..i} (-1)^(i-j) C(i,j) S_(n+j).
Scalar forward_difference(const SequencePrefix& seq, long order, long start);

/// The prefix (Delta^i S_0, ..., Delta^i S_(N-i)).
SequencePrefix difference_sequence(const SequencePrefix& seq, long order);

/**
 * \brief All forward-difference rows of one sequence, materialised once.
 *
 * row(d)[j] = Delta^d S_j for d + j <= N. Built eagerly and immutable
 * afterwards, so concurrent readers are safe.
 */
class DifferenceTable {
 public:
  explicit DifferenceTable(const SequencePrefix& seq);

  long max_index() const { return seq_.max_index(); }
  Mode mode() const { return seq_.mode(); }
  const SequencePrefix& source() const { return seq_; }

  /// Delta^d S_j; throws IndexOutOfRange when d + j > N.
  const Scalar& diff(long d, long j) const;

 private:
  SequencePrefix seq_;
  std::vector<std::vector<Scalar>> rows_;
};

}  // namespace epsalg
