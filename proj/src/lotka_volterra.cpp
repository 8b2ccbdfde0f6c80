#include "epsalg/lotka_volterra.hpp"

#include <map>

#include "epsalg/determinants.hpp"

namespace epsalg {

namespace {

Scalar larger_abs(const Scalar& a, const Scalar& b) { return a.compare_abs(b) >= 0 ? a.abs() : b.abs(); }

LVEntry finite_entry(Scalar v) {
  LVEntry e;
  e.status = LVStatus::Finite;
  e.value = std::move(v);
  return e;
}

}  // namespace

LVLattice::LVLattice(int m, long max_time) : m_(m), max_line_(-m), max_time_(max_time) {
  if (m_ < 1) throw Error("lattice needs m >= 1");
  rows_.resize(static_cast<std::size_t>(m_ + 1));
  for (auto& row : rows_) row.resize(static_cast<std::size_t>(std::max<long>(0, max_time_ + 1)));
}

long LVLattice::max_time(int j) const { return j <= 0 ? max_time_ : max_time_ - j; }

bool LVLattice::exists(int j, long n) const {
  if (j < min_line() || j > max_line_ || n < 0) return false;
  return n <= max_time(j);
}

const LVEntry& LVLattice::entry(int j, long n) const {
  if (!exists(j, n)) {
    throw IndexOutOfRange("lattice entry (" + std::to_string(j) + ", " + std::to_string(n) + ") outside domain");
  }
  return rows_[static_cast<std::size_t>(j - min_line())][static_cast<std::size_t>(n)];
}

LVEntry& LVLattice::entry_mut(int j, long n) {
  if (!exists(j, n)) {
    throw IndexOutOfRange("lattice entry (" + std::to_string(j) + ", " + std::to_string(n) + ") outside domain");
  }
  return rows_[static_cast<std::size_t>(j - min_line())][static_cast<std::size_t>(n)];
}

void LVLattice::set_max_line(int j) {
  if (j < max_line_) throw Error("lattice lines can only grow");
  max_line_ = j;
  rows_.resize(static_cast<std::size_t>(j - min_line()) + 1);
  for (int line = min_line(); line <= max_line_; ++line) {
    rows_[static_cast<std::size_t>(line - min_line())].resize(
        static_cast<std::size_t>(std::max<long>(0, max_time(line) + 1)));
  }
}

LVLattice miura_from_epsilon(const EpsilonTable& table) {
  const int m = table.m();
  const long N = table.max_term_index();
  const Mode mode = table.source().mode();
  const mpfr_prec_t prec = table.source().precision_bits();
  LVLattice lat(m, N - 1);
  lat.set_max_line(static_cast<int>(std::max<long>(0, N - 1)));

  // Boundary rows, straight from the printed initial values.
  for (long n = 0; n + 1 <= N; ++n) {
    LVEntry inf;
    inf.status = LVStatus::Infinity;
    lat.entry_mut(-m, n) = inf;
    for (int j = -m + 1; j <= -1; ++j) {
      lat.entry_mut(j, n) = finite_entry(Scalar::from_long(n, mode, prec));
    }
    const Scalar diff = table.source()[n + 1] - table.source()[n];
    if (is_effectively_zero(diff, larger_abs(table.source()[n + 1], table.source()[n]), table.policy())) {
      LVEntry bad;
      bad.status = LVStatus::Breakdown;
      lat.entry_mut(0, n) = bad;
    } else {
      lat.entry_mut(0, n) = finite_entry(diff.reciprocal());
    }
  }

  // Interior rows by the reciprocal-difference substitution.
  for (int j = 1; j <= lat.max_line(); ++j) {
    for (long n = 0; n <= lat.max_time(j); ++n) {
      if (!table.exists(j, n) || !table.exists(j, n + 1)) continue;
      const CellState& hi = table.cell(j, n + 1);
      const CellState& lo = table.cell(j, n);
      LVEntry e;
      if (!hi.valid() || !lo.valid()) {
        e.status = LVStatus::Breakdown;
      } else {
        const Scalar diff = hi.value - lo.value;
        if (is_effectively_zero(diff, larger_abs(hi.value, lo.value), table.policy())) {
          e.status = LVStatus::Breakdown;
        } else {
          e = finite_entry(diff.reciprocal());
        }
      }
      lat.entry_mut(j, n) = e;
    }
  }
  return lat;
}

Scalar lv_closed_form(const DifferenceTable& seq, int m, LVBranch branch, int j, int k, long n,
                      const ZeroPolicy& policy) {
  if (m < 1 || k < 0 || n < 0) throw IndexOutOfRange("closed form needs m >= 1, k >= 0, n >= 0");
  auto H = [&](long a, long at, int dim) { return extended_h(seq, at, dim, m, a); };
  Scalar num;
  Scalar den;
  switch (branch) {
    case LVBranch::Eq42:
      num = H(m + 1, n, k) * H(m + 1, n + 1, k);
      den = H(1, n, k + 1) * H(m, n + 1, k);
      break;
    case LVBranch::Eq43:
      num = -(H(1, n, k + 1) * H(1, n + 1, k + 1));
      den = H(2, n, k + 1) * H(m + 1, n + 1, k);
      break;
    case LVBranch::Eq44:
      if (j < 2 || j > m) throw IndexOutOfRange("Eq44 branch needs 2 <= j <= m");
      num = H(j, n, k + 1) * H(j, n + 1, k + 1);
      den = H(j + 1, n, k + 1) * H(j - 1, n + 1, k + 1);
      break;
    default:
      throw Error("unknown closed-form branch");
  }
  if (is_effectively_zero(den, num.abs() + den.abs(), policy)) {
    throw Breakdown("closed-form denominator vanished at (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")",
                    k, n);
  }
  return num / den;
}

Scalar lv_closed_form(const SequencePrefix& seq, int m, LVBranch branch, int j, int k, long n,
                      const ZeroPolicy& policy) {
  return lv_closed_form(DifferenceTable(seq), m, branch, j, k, n, policy);
}

Scalar lv_closed_form_line(const DifferenceTable& seq, int m, int line, long n, const ZeroPolicy& policy) {
  if (line < 0) throw IndexOutOfRange("closed-form lines start at 0");
  const int k = line / (m + 1);
  const int r = line % (m + 1);
  if (r == 0) return lv_closed_form(seq, m, LVBranch::Eq42, 0, k, n, policy);
  if (r == 1) return lv_closed_form(seq, m, LVBranch::Eq43, 0, k, n, policy);
  return lv_closed_form(seq, m, LVBranch::Eq44, r, k, n, policy);
}

bool LVResidualReport::all_zero_exact() const {
  for (const auto& site : residuals) {
    if (!site.residual.is_zero()) return false;
  }
  return true;
}

LVResidualReport lv_residuals(const LVLattice& lattice) {
  const int m = lattice.m();
  LVResidualReport report;
  const int k_lo = (m == 1) ? 0 : 1;  // k-1 may only touch the Infinity row
  for (int k = k_lo; k <= lattice.max_line() - m; ++k) {
    for (long n = 0;; ++n) {
      if (!lattice.exists(k + m, n) || !lattice.exists(k - 1, n + 1)) break;
      bool in_range = true;
      for (int j = k; j < k + m && in_range; ++j) {
        if (!lattice.exists(j, n) || !lattice.exists(j, n + 1)) in_range = false;
      }
      if (!in_range) break;

      bool skip = false;
      auto usable = [&](const LVEntry& e) { return e.status == LVStatus::Finite || e.status == LVStatus::Infinity; };
      for (int j = k; j < k + m; ++j) {
        if (!lattice.entry(j, n).finite() || !lattice.entry(j, n + 1).finite()) skip = true;
      }
      if (!usable(lattice.entry(k + m, n)) || !usable(lattice.entry(k - 1, n + 1))) skip = true;
      if (skip) {
        report.skipped.push_back({k, n});
        continue;
      }

      const Mode mode = lattice.entry(k, n).value.mode();
      const mpfr_prec_t prec = mode == Mode::Float ? lattice.entry(k, n).value.precision_bits() : 53;
      Scalar next_prod = Scalar::one(mode, prec);
      Scalar prev_prod = Scalar::one(mode, prec);
      for (int j = k; j < k + m; ++j) {
        next_prod *= lattice.entry(j, n + 1).value;
        prev_prod *= lattice.entry(j, n).value;
      }
      auto reciprocal_or_zero = [&](const LVEntry& e) {
        if (e.status == LVStatus::Infinity) return Scalar::zero(mode, prec);
        if (e.value.is_zero()) throw Breakdown("reciprocal of zero lattice entry", k, n);
        return e.value.reciprocal();
      };
      try {
        const Scalar rhs = reciprocal_or_zero(lattice.entry(k + m, n)) - reciprocal_or_zero(lattice.entry(k - 1, n + 1));
        report.residuals.push_back({k, n, (next_prod - prev_prod) - rhs});
      } catch (const Breakdown&) {
        report.skipped.push_back({k, n});
      }
    }
  }
  return report;
}

bool LVUReport::all_zero_exact() const {
  for (const auto& site : equation_residuals) {
    if (!site.residual.is_zero()) return false;
  }
  for (const auto& site : ratio_residuals) {
    if (!site.residual.is_zero()) return false;
  }
  return true;
}

LVUReport lv_m1_u_check(const LVLattice& lattice) {
  if (lattice.m() != 1) throw Error("the u reduction exists at m = 1 only");
  LVUReport report;

  auto finite_at = [&](int j, long n) -> const Scalar* {
    if (!lattice.exists(j, n)) return nullptr;
    const LVEntry& e = lattice.entry(j, n);
    return e.finite() ? &e.value : nullptr;
  };

  // Edge seeds u_0^(n) = -1 / (a_1^(n) a_0^(n+1)), then u_k by the ratio
  // constraint. Rows are ragged: u_k^(n) exists for k + n <= max chain depth.
  std::map<std::pair<int, long>, Scalar> u;
  const long top = lattice.max_time(0);
  long seeds = 0;
  for (long n = 0; n <= top; ++n) {
    const Scalar* a1 = finite_at(1, n);
    const Scalar* a0 = finite_at(0, n + 1);
    if (a1 && a0 && !a1->is_zero() && !a0->is_zero()) {
      u.emplace(std::make_pair(0, n), -((*a1) * (*a0)).reciprocal());
      ++seeds;
    }
  }
  if (seeds == 0) throw GaugeUnderdetermined("no usable edge seeds for the u normalization");

  for (int k = 1; k <= lattice.max_line() - 1; ++k) {
    for (long n = 0; n <= top - k; ++n) {
      const auto prev = u.find({k - 1, n + 1});
      const Scalar* down = finite_at(k - 1, n + 1);
      const Scalar* upline = finite_at(k + 1, n);
      if (prev == u.end() || !down || !upline || upline->is_zero()) continue;
      const Scalar ratio = (*down) / (*upline);
      const Scalar value = ratio * prev->second;
      u.emplace(std::make_pair(k, n), value);
      report.ratio_residuals.push_back({k, n, value - ratio * prev->second});
    }
  }

  auto u_at = [&](int k, long n) -> const Scalar* {
    const auto it = u.find({k, n});
    return it == u.end() ? nullptr : &it->second;
  };
  for (int k = 1; k <= lattice.max_line() - 1; ++k) {
    for (long n = 0; n <= top; ++n) {
      const Scalar* u_up = u_at(k, n + 1);
      const Scalar* u_left = u_at(k - 1, n + 1);
      const Scalar* u_here = u_at(k, n);
      const Scalar* u_right = u_at(k + 1, n);
      if (!u_up || !u_left || !u_here || !u_right) continue;
      const Mode mode = u_here->mode();
      const mpfr_prec_t prec = mode == Mode::Float ? u_here->precision_bits() : 53;
      const Scalar one = Scalar::one(mode, prec);
      report.equation_residuals.push_back({k, n, (*u_up) * (one + *u_left) - (*u_here) * (one + *u_right)});
      ++report.sites_checked;
    }
  }
  return report;
}

}  // namespace epsalg
