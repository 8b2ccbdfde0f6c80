#include "epsalg/epsilon_table.hpp"

namespace epsalg {

namespace {

Scalar larger_abs(const Scalar& a, const Scalar& b) { return a.compare_abs(b) >= 0 ? a.abs() : b.abs(); }

CellState breakdown_from(int k, long n) {
  CellState c;
  c.status = CellStatus::Breakdown;
  c.origin_k = k;
  c.origin_n = n;
  return c;
}

CellState inherit_breakdown(const CellState& parent) {
  CellState c;
  c.status = CellStatus::Breakdown;
  c.origin_k = parent.origin_k;
  c.origin_n = parent.origin_n;
  return c;
}

CellState valid_cell(Scalar v) {
  CellState c;
  c.status = CellStatus::Valid;
  c.value = std::move(v);
  return c;
}

}  // namespace

EpsilonTable::EpsilonTable(int m, Kind kind, SequencePrefix source, ZeroPolicy policy)
    : m_(m), kind_(kind), source_(std::move(source)), policy_(std::move(policy)) {
  if (m_ < 1) throw Error("epsilon table needs m >= 1");
  if (kind_ == Kind::Cross && m_ != 1) throw Error("cross rule requires m=1");
  const long n_terms = source_.size();
  const int rows = (max_k() - min_k()) + 1;
  rows_.resize(static_cast<std::size_t>(rows));
  for (int k = min_k(); k <= max_k(); ++k) {
    const long count = n_terms == 0 ? 0 : max_n(k) + 1;
    rows_[static_cast<std::size_t>(k - min_k())].resize(static_cast<std::size_t>(std::max<long>(0, count)));
  }
}

bool EpsilonTable::exists(int k, long n) const {
  if (k < min_k() || k > max_k() || n < 0) return false;
  return n <= max_n(k);
}

const CellState& EpsilonTable::cell(int k, long n) const {
  if (!exists(k, n)) {
    throw IndexOutOfRange("epsilon cell (" + std::to_string(k) + ", " + std::to_string(n) + ") outside table");
  }
  return rows_[static_cast<std::size_t>(k - min_k())][static_cast<std::size_t>(n)];
}

CellState& EpsilonTable::cell_mut(int k, long n) {
  if (!exists(k, n)) {
    throw IndexOutOfRange("epsilon cell (" + std::to_string(k) + ", " + std::to_string(n) + ") outside table");
  }
  return rows_[static_cast<std::size_t>(k - min_k())][static_cast<std::size_t>(n)];
}

void EpsilonTable::for_each(const std::function<void(int, long, const CellState&)>& fn) const {
  for (int k = min_k(); k <= max_k(); ++k) {
    const auto& row = rows_[static_cast<std::size_t>(k - min_k())];
    for (long n = 0; n < static_cast<long>(row.size()); ++n) {
      fn(k, n, row[static_cast<std::size_t>(n)]);
    }
  }
}

bool EpsilonTable::identical(const EpsilonTable& a, const EpsilonTable& b) {
  if (a.m_ != b.m_ || a.min_k() != b.min_k() || a.max_term_index() != b.max_term_index()) return false;
  bool same = true;
  a.for_each([&](int k, long n, const CellState& ca) {
    if (!same) return;
    if (!b.exists(k, n)) {
      same = false;
      return;
    }
    const CellState& cb = b.cell(k, n);
    if (ca.status != cb.status) {
      same = false;
      return;
    }
    if (ca.status == CellStatus::Valid && !ca.value.equals(cb.value)) same = false;
  });
  return same;
}

void EpsilonTable::fill_initial_rows(long n) {
  const Mode mode = source_.mode();
  const mpfr_prec_t prec = source_.precision_bits();
  if (kind_ == Kind::Cross) {
    CellState inf;
    inf.status = CellStatus::Infinity;
    cell_mut(-2, n) = inf;
    cell_mut(0, n) = valid_cell(source_[n]);
    return;
  }
  cell_mut(-m_, n) = valid_cell(Scalar::zero(mode, prec));
  for (int i = 1; i < m_; ++i) {
    cell_mut(-m_ + i, n) = valid_cell(Scalar::from_long(n, mode, prec));
  }
  cell_mut(0, n) = valid_cell(source_[n]);
}

namespace {

/// eps_(k,m)^(n) = eps_(k-m-1,m)^(n+1) + 1 / prod_i (eps_(k-m-1+i)^(n+1) - eps_(k-m-1+i)^(n)).
CellState multistep_cell(const EpsilonTable& t, int kappa, long n) {
  const int base = kappa - t.m() - 1;
  const CellState& low = t.cell(base, n + 1);
  if (low.status == CellStatus::Breakdown) return inherit_breakdown(low);
  Scalar prod = Scalar::one(t.source().mode(), t.source().precision_bits());
  for (int i = 1; i <= t.m(); ++i) {
    const CellState& hi = t.cell(base + i, n + 1);
    const CellState& lo = t.cell(base + i, n);
    if (hi.status == CellStatus::Breakdown) return inherit_breakdown(hi);
    if (lo.status == CellStatus::Breakdown) return inherit_breakdown(lo);
    const Scalar diff = hi.value - lo.value;
    if (is_effectively_zero(diff, larger_abs(hi.value, lo.value), t.policy())) {
      return breakdown_from(kappa, n);
    }
    prod *= diff;
  }
  if (prod.is_zero() || !prod.is_finite()) return breakdown_from(kappa, n);
  Scalar v = low.value + prod.reciprocal();
  if (!v.is_finite()) return breakdown_from(kappa, n);
  return valid_cell(std::move(v));
}

/// Wynn's lozenge: eps_(k)^(n) = eps_(k-2)^(n+1) + 1 / (eps_(k-1)^(n+1) - eps_(k-1)^(n)).
CellState wynn_cell(const EpsilonTable& t, int k, long n) {
  const CellState& low = t.cell(k - 2, n + 1);
  const CellState& hi = t.cell(k - 1, n + 1);
  const CellState& lo = t.cell(k - 1, n);
  if (low.status == CellStatus::Breakdown) return inherit_breakdown(low);
  if (hi.status == CellStatus::Breakdown) return inherit_breakdown(hi);
  if (lo.status == CellStatus::Breakdown) return inherit_breakdown(lo);
  const Scalar diff = hi.value - lo.value;
  if (is_effectively_zero(diff, larger_abs(hi.value, lo.value), t.policy())) {
    return breakdown_from(k, n);
  }
  Scalar v = low.value + diff.reciprocal();
  if (!v.is_finite()) return breakdown_from(k, n);
  return valid_cell(std::move(v));
}

/// Solves the five-point cross rule for eps_(K)^(n) from column K-2 at
/// n, n+1, n+2 and column K-4 at n+2; Infinity parents contribute nothing
/// through their reciprocal differences.
CellState cross_cell(const EpsilonTable& t, int K, long n) {
  const Mode mode = t.source().mode();
  const mpfr_prec_t prec = t.source().precision_bits();
  const CellState& center = t.cell(K - 2, n + 1);
  const CellState& up = t.cell(K - 2, n);
  const CellState& down = t.cell(K - 2, n + 2);
  const CellState& left = t.cell(K - 4, n + 2);
  for (const CellState* p : {&center, &up, &down, &left}) {
    if (p->status == CellStatus::Breakdown) return inherit_breakdown(*p);
    if (p->status == CellStatus::Unset) return CellState{};
  }
  if (center.status == CellStatus::Infinity) return breakdown_from(K, n);

  auto reciprocal_diff = [&](const CellState& cs) -> Scalar {
    if (cs.status == CellStatus::Infinity) return Scalar::zero(mode, prec);
    const Scalar diff = cs.value - center.value;
    if (is_effectively_zero(diff, larger_abs(cs.value, center.value), t.policy())) {
      throw Breakdown("cross rule difference vanished", K, n);
    }
    return diff.reciprocal();
  };

  try {
    const Scalar r_down = reciprocal_diff(down);
    const Scalar r_up = reciprocal_diff(up);
    const Scalar r_left = reciprocal_diff(left);
    const Scalar rhs = r_down + r_up - r_left;
    Scalar scale = larger_abs(r_down, r_up);
    scale = larger_abs(scale, r_left);
    if (is_effectively_zero(rhs, scale, t.policy())) return breakdown_from(K, n);
    Scalar v = center.value + rhs.reciprocal();
    if (!v.is_finite()) return breakdown_from(K, n);
    return valid_cell(std::move(v));
  } catch (const Breakdown& b) {
    return breakdown_from(b.k, b.n);
  }
}

}  // namespace

void EpsilonTable::compute_column_range(int kappa_lo, int kappa_hi, long fixed_diagonal) {
  for (int kappa = kappa_lo; kappa <= kappa_hi; ++kappa) {
    if (kind_ == Kind::Cross && kappa % 2 != 0) continue;
    const long n_begin = fixed_diagonal >= 0 ? fixed_diagonal - kappa : 0;
    const long n_end = fixed_diagonal >= 0 ? fixed_diagonal - kappa : max_n(kappa);
    for (long n = n_begin; n <= n_end; ++n) {
      if (!exists(kappa, n)) continue;
      CellState result;
      switch (kind_) {
        case Kind::Multistep:
          result = multistep_cell(*this, kappa, n);
          break;
        case Kind::Wynn:
          result = wynn_cell(*this, kappa, n);
          break;
        case Kind::Cross:
          result = cross_cell(*this, kappa, n);
          break;
      }
      cell_mut(kappa, n) = std::move(result);
    }
  }
}

void EpsilonTable::append_term(const Scalar& next_term) {
  source_.push_back(next_term);
  const long n_new = source_.max_index();
  // Grow every row by its new slot, plus the new top column.
  rows_.resize(static_cast<std::size_t>((max_k() - min_k()) + 1));
  for (int k = min_k(); k <= max_k(); ++k) {
    rows_[static_cast<std::size_t>(k - min_k())].resize(static_cast<std::size_t>(max_n(k) + 1));
  }
  fill_initial_rows(n_new);
  if (n_new >= 1) compute_column_range(1, static_cast<int>(n_new), n_new);
}

EpsilonTable wynn_epsilon(const SequencePrefix& seq, const ZeroPolicy& policy) {
  EpsilonTable t(1, EpsilonTable::Kind::Wynn, seq, policy);
  for (long n = 0; n <= seq.max_index(); ++n) t.fill_initial_rows(n);
  t.compute_column_range(1, t.max_k(), -1);
  return t;
}

EpsilonTable multistep_epsilon(const SequencePrefix& seq, int m, const ZeroPolicy& policy) {
  EpsilonTable t(m, EpsilonTable::Kind::Multistep, seq, policy);
  for (long n = 0; n <= seq.max_index(); ++n) t.fill_initial_rows(n);
  t.compute_column_range(1, t.max_k(), -1);
  return t;
}

EpsilonTable cross_rule_table(const SequencePrefix& seq, const ZeroPolicy& policy) {
  EpsilonTable t(1, EpsilonTable::Kind::Cross, seq, policy);
  for (long n = 0; n <= seq.max_index(); ++n) t.fill_initial_rows(n);
  t.compute_column_range(1, t.max_k(), -1);
  return t;
}

EpsilonTable progressive_append(const EpsilonTable& table, const Scalar& next_term) {
  EpsilonTable out(table);
  out.append_term(next_term);
  return out;
}

EpsilonTable empty_epsilon_table(int m, EpsilonTable::Kind kind, const ZeroPolicy& policy, Mode mode,
                                 mpfr_prec_t precision_bits, const std::string& label) {
  (void)mode;
  (void)precision_bits;
  SequencePrefix empty(label);
  return EpsilonTable(m, kind, std::move(empty), policy);
}

}  // namespace epsalg
