#pragma once

#include <functional>
#include <vector>

#include "epsalg/sequence.hpp"

namespace epsalg {

enum class CellStatus { Valid, Breakdown, Infinity, Unset };

struct CellState {
  CellStatus status = CellStatus::Unset;
  Scalar value;
  // Location of the originating zero denominator, for Breakdown cells.
  int origin_k = 0;
  long origin_n = 0;

  bool valid() const { return status == CellStatus::Valid; }
};

/**
 * \brief The two-index array eps_(k,m)^(n) with per-cell status.
 *
 * Initialization rows k = -m..0 exist for every n <= N; computed columns
 * k >= 1 exist for k + n <= N (each unit of k consumes one sequence term).
 * Cross-rule tables extend the row range down to k = -2 at m = 1 and leave
 * the odd columns Unset. Finished tables are immutable; construction is
 * sequential because of the diagonal data dependencies.
 */
class EpsilonTable {
 public:
  enum class Kind { Multistep, Wynn, Cross };

  EpsilonTable(int m, Kind kind, SequencePrefix source, ZeroPolicy policy);

  int m() const { return m_; }
  Kind kind() const { return kind_; }
  long max_term_index() const { return source_.max_index(); }
  const SequencePrefix& source() const { return source_; }
  const ZeroPolicy& policy() const { return policy_; }

  int min_k() const { return kind_ == Kind::Cross ? -2 : -m_; }
  int max_k() const { return static_cast<int>(std::max<long>(0, max_term_index())); }
  long max_n(int k) const { return k <= 0 ? max_term_index() : max_term_index() - k; }
  bool exists(int k, long n) const;

  const CellState& cell(int k, long n) const;
  CellState& cell_mut(int k, long n);

  void for_each(const std::function<void(int k, long n, const CellState&)>& fn) const;

  /// Exact cell-for-cell equality (domain, status and values).
  static bool identical(const EpsilonTable& a, const EpsilonTable& b);

 private:
  int m_;
  Kind kind_;
  SequencePrefix source_;
  ZeroPolicy policy_;
  std::vector<std::vector<CellState>> rows_;  // rows_[k - min_k()][n]

  friend EpsilonTable progressive_append(const EpsilonTable& table, const Scalar& next_term);
  friend EpsilonTable wynn_epsilon(const SequencePrefix& seq, const ZeroPolicy& policy);
  friend EpsilonTable multistep_epsilon(const SequencePrefix& seq, int m, const ZeroPolicy& policy);
  friend EpsilonTable cross_rule_table(const SequencePrefix& seq, const ZeroPolicy& policy);
  void append_term(const Scalar& next_term);
  void fill_initial_rows(long n);
  void compute_column_range(int kappa_lo, int kappa_hi, long fixed_diagonal);
};

/// Wynn's recursion at m = 1 (an independent code path from the multistep rule).
EpsilonTable wynn_epsilon(const SequencePrefix& seq, const ZeroPolicy& policy);

/// The multistep recursion with initializations (0, n, ..., n, S_n).
EpsilonTable multistep_epsilon(const SequencePrefix& seq, int m, const ZeroPolicy& policy);

/// Even columns only, driven by the five-point cross rule with an Infinity
/// column at k = -2 whose reciprocal differences vanish.
EpsilonTable cross_rule_table(const SequencePrefix& seq, const ZeroPolicy& policy);

/// Extends a table by one term, computing exactly the new ascending diagonal.
/// The result is cell-for-cell identical to a batch rebuild on the longer
/// sequence.
EpsilonTable progressive_append(const EpsilonTable& table, const Scalar& next_term);

/// Base case for progressive use: a table over zero terms.
EpsilonTable empty_epsilon_table(int m, EpsilonTable::Kind kind, const ZeroPolicy& policy, Mode mode,
                                 mpfr_prec_t precision_bits = 53, const std::string& label = "");

}  // namespace epsalg
