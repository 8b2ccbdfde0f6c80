#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "epsalg/determinants.hpp"

namespace epsalg {

enum class IdentityId {
  L1Eq10,
  L2Eq11,
  L3Eq12,
  L3aEq13,
  L3bEq14,
  L4Eq15,
  L4aEq16,
  L5Eq17,
  BilEq19,
  BilEq21,
  BilEq22,
  BilEq23,
  BilEq24,
  Cor2,
};

const char* identity_name(IdentityId id);

struct IdentityCase {
  IdentityId id;
  int m = 1;
  int k = 0;
  long n = 0;
  int i = 0;  // used by the identities carrying a free difference order
};

struct IdentityResult {
  Scalar residual;
  Scalar scale;  // largest |summand|, the natural magnitude for float bounds
};

/**
 * Evaluates both sides of the named determinantal identity and returns
 * LHS - RHS. Exactly zero in Rational mode for every admissible case; in
 * Float mode bounded by rho times the returned scale.
 */
IdentityResult check_identity_detailed(const IdentityCase& c, const DifferenceTable& seq);
Scalar check_identity(const IdentityCase& c, const DifferenceTable& seq);
Scalar check_identity(const IdentityCase& c, const SequencePrefix& seq);

/// Enumerates every admissible (k, n, i) of every identity for one sequence
/// at step m, invoking fn per case; returns the number of cases evaluated.
long sweep_identities(const DifferenceTable& seq, int m,
                      const std::function<void(const IdentityCase&, const IdentityResult&)>& fn);

/**
 * The determinantal assignments of the bilinear variables: F on lattice line
 * kappa = (m+1)(k-1)+i is H_k(Delta^i S_n) for i = 1..m+1; G pairs the other
 * determinant of each epsilon ratio (eps = G/F reproduces the table,
 * initialization rows included).
 */
Scalar f_value(const DifferenceTable& seq, int m, int line, long n);
Scalar g_value(const DifferenceTable& seq, int m, int line, long n);

/// Residual of the product-form bilinear relation at base line kappa.
Scalar bilinear_relation19_residual(const DifferenceTable& seq, int m, int kappa, long n);

/// Residuals of the coupled bilinear relations at block k with
/// i in 2..m+1, plus the assembled product relation.
std::vector<std::pair<IdentityId, Scalar>> check_bilinear(const DifferenceTable& seq, int m, int k, long n, int i);
std::vector<std::pair<IdentityId, Scalar>> check_bilinear(const SequencePrefix& seq, int m, int k, long n, int i);

/// Residual of the G-free relation F_(k+m+1)^n F_(k-1)^(n+1) =
/// F_k^n F_(k+m)^(n+1) - F_(k+m)^n F_k^(n+1) at line index k.
Scalar check_corollary2(const DifferenceTable& seq, int m, int k, long n);
Scalar check_corollary2(const SequencePrefix& seq, int m, int k, long n);

/// Residual of the bordered-determinant identity |M||A| = NW*SE - NE*SW on an
/// arbitrary square matrix of dimension >= 3; zero for every matrix.
Scalar check_sylvester(const Matrix& matrix);

}  // namespace epsalg
