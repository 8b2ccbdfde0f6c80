#pragma once

#include "epsalg/determinants.hpp"

namespace epsalg {

/**
 * The transformations defined by ratios of determinants, plus an independent
 * linear-system realization. All take a precomputed DifferenceTable; the
 * SequencePrefix overloads build one on the fly.
 */

/// Classic transformation e_k(S_n) = Hankel_(k+1)(S_n) / Hankel_k(Delta^2 S_n).
Scalar shanks(const DifferenceTable& seq, int k, long n, const ZeroPolicy& policy);
Scalar shanks(const SequencePrefix& seq, int k, long n, const ZeroPolicy& policy);

/// Multistep transformation e_(k,m)(S_n) = H_(k+1)(S_n) / H_k(Delta^(m+1) S_n).
Scalar multistep_shanks(const DifferenceTable& seq, int m, int k, long n, const ZeroPolicy& policy);
Scalar multistep_shanks(const SequencePrefix& seq, int m, int k, long n, const ZeroPolicy& policy);

/**
 * The full two-index family: the epsilon entry of column kappa >= 0 as a
 * determinant ratio, dispatching on kappa mod (m+1):
 *   kappa = (m+1)k      -> H_(k+1)(S_n) / H_k(Delta^(m+1) S_n)
 *   kappa = (m+1)(k-1)+1 -> H_(k-1)(Delta^(m+2) S_n) / H_k(Delta S_n)
 *   kappa = (m+1)(k-1)+i -> Phi_(k+1)(Delta^(i-1) S_n) / H_k(Delta^i S_n), 2 <= i <= m.
 */
Scalar epsilon_entry_det(const DifferenceTable& seq, int m, int kappa, long n, const ZeroPolicy& policy);
Scalar epsilon_entry_det(const SequencePrefix& seq, int m, int kappa, long n, const ZeroPolicy& policy);

/**
 * Solves S_(n+j) = c + sum_i a_i Delta^(im) S_(n+j), j = 0..k, for
 * (c, a_1..a_k) by dense elimination and returns c. Agrees with
 * multistep_shanks wherever both are defined; singularity is reported as
 * SingularSystem (in Rational mode the two failures coincide).
 */
Scalar multistep_shanks_linear(const DifferenceTable& seq, int m, int k, long n, const ZeroPolicy& policy);
Scalar multistep_shanks_linear(const SequencePrefix& seq, int m, int k, long n, const ZeroPolicy& policy);

/// Whether e_(k,m)(a S + b) = a e_(k,m)(S) + b, exactly in Rational mode and
/// within the policy thresholds in Float mode.
bool quasilinearity_check(const SequencePrefix& seq, int m, int k, long n, const Scalar& a, const Scalar& b,
                          const ZeroPolicy& policy);

}  // namespace epsalg
