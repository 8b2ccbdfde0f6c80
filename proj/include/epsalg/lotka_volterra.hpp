#pragma once

#include <vector>

#include "epsalg/epsilon_table.hpp"

namespace epsalg {

enum class LVStatus { Finite, Infinity, Breakdown, Unset };

struct LVEntry {
  LVStatus status = LVStatus::Unset;
  Scalar value;

  bool finite() const { return status == LVStatus::Finite; }
};

/**
 * \brief The lattice variables a on the half-integer-shifted index set.
 *
 * Entry (j, n) stores the physical variable a_(j-(m-1)/2)^(n) under the
 * integer re-index j. Boundary rows follow the printed initial values:
 * j = -m is Infinity, j = -m+1..-1 hold the time index n, j = 0 holds
 * 1/(Delta S_n). Interior rows j >= 1 are the reciprocal differences of the
 * epsilon columns, 1 / (eps_j^(n+1) - eps_j^(n)).
 */
class LVLattice {
 public:
  LVLattice(int m, long max_time);

  int m() const { return m_; }
  int min_line() const { return -m_; }
  int max_line() const { return max_line_; }
  /// Entries on line j exist for n = 0..max_time(j).
  long max_time(int j) const;
  bool exists(int j, long n) const;

  const LVEntry& entry(int j, long n) const;
  LVEntry& entry_mut(int j, long n);

  void set_max_line(int j);

 private:
  int m_;
  int max_line_;
  long max_time_;  // time range of the boundary rows
  std::vector<std::vector<LVEntry>> rows_;
};

/// Builds the lattice from an epsilon table (boundary rows from the printed
/// initial values, interior rows by the reciprocal-difference substitution).
LVLattice miura_from_epsilon(const EpsilonTable& table);

enum class LVBranch { Eq42, Eq43, Eq44 };

/**
 * The closed-form determinant ratio for one lattice entry:
 *   Eq42 (line (m+1)k):   H_k(D^(m+1)S_n) H_k(D^(m+1)S_(n+1)) / (H_(k+1)(D S_n) H_k(D^m S_(n+1)))
 *   Eq43 (line (m+1)k+1): -H_(k+1)(D S_n) H_(k+1)(D S_(n+1)) / (H_(k+1)(D^2 S_n) H_k(D^(m+1) S_(n+1)))
 *   Eq44 (line (m+1)k+j): H_(k+1)(D^j S_n) H_(k+1)(D^j S_(n+1)) / (H_(k+1)(D^(j+1) S_n) H_(k+1)(D^(j-1) S_(n+1)))
 * with j = 2..m for Eq44.
 */
Scalar lv_closed_form(const DifferenceTable& seq, int m, LVBranch branch, int j, int k, long n,
                      const ZeroPolicy& policy);
Scalar lv_closed_form(const SequencePrefix& seq, int m, LVBranch branch, int j, int k, long n,
                      const ZeroPolicy& policy);

/// Closed-form value addressed by lattice line index (dispatches on the
/// residue of the line mod m+1).
Scalar lv_closed_form_line(const DifferenceTable& seq, int m, int line, long n, const ZeroPolicy& policy);

struct LVSiteResidual {
  int k;  // lowest product line of the site
  long n;
  Scalar residual;
};

struct LVSkippedSite {
  int k;
  long n;
};

/**
 * \brief Residuals of the lattice equation at every admissible site.
 *
 * A site (k, n) relates the products over lines k..k+m-1 at times n and n+1
 * to the reciprocals of line k+m at n and line k-1 at n+1. Sites are
 * admissible when the product lines are interior or the j = 0 boundary row
 * (all lines >= 0) and the left reciprocal line is >= 0 or the Infinity row
 * -m, whose reciprocal contributes zero. Sites touching a Breakdown entry
 * are skipped and reported.
 */
struct LVResidualReport {
  std::vector<LVSiteResidual> residuals;
  std::vector<LVSkippedSite> skipped;

  bool all_zero_exact() const;
};

LVResidualReport lv_residuals(const LVLattice& lattice);

/**
 * \brief The m = 1 reduction: dependent variables u and their lattice equation.
 *
 * u is pinned only up to gauge by the ratio constraint
 * u_k^(n) / u_(k-1)^(n+1) = a_(k-1)^(n+1) / a_(k+1)^(n); the edge seeds are
 * taken as u_0^(n) = -1 / (a_1^(n) a_0^(n+1)), the unique normalization that
 * closes the two-term lattice equation, and the report carries the equation
 * residuals u_k^(n+1)(1 + u_(k-1)^(n+1)) - u_k^(n)(1 + u_(k+1)^(n)).
 */
struct LVUReport {
  struct Site {
    int k;
    long n;
    Scalar residual;
  };
  std::vector<Site> equation_residuals;
  std::vector<Site> ratio_residuals;  // the ratio constraint, re-checked
  long sites_checked = 0;

  bool all_zero_exact() const;
};

LVUReport lv_m1_u_check(const LVLattice& lattice);

}  // namespace epsalg
