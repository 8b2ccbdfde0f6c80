#pragma once

#include <vector>

#include "epsalg/sequence.hpp"

namespace epsalg {

using Matrix = std::vector<std::vector<Scalar>>;

/// Fraction-free (Bareiss) elimination; exact in Rational mode.
Scalar det_bareiss(Matrix m);
/// Gaussian elimination with partial pivoting, for Float mode.
Scalar det_partial_pivot(Matrix m);
/// Direct cofactor expansion, dimensions 0..4 only (self-test path).
Scalar det_cofactor(const Matrix& m);
/// Dispatches on the entry mode.
Scalar determinant(const Matrix& m);

/// Product over rows of the largest |entry|; a magnitude scale for deciding
/// whether a float determinant is effectively zero.
Scalar determinant_scale(const Matrix& m);

enum class DetFamily { ClassicHankel, ExtendedH, Phi };

/// A request for one determinant value: family at (n, k) with step m, over
/// the input shifted by `shift` difference orders (u = Delta^shift S).
struct DetSpec {
  DetFamily family = DetFamily::ClassicHankel;
  int k = 0;
  long n = 0;
  int m = 1;  // ignored for ClassicHankel
  long shift = 0;
};

/**
 * Classic Hankel determinant of a k x k window: entry (i, j) = u_(n+i+j).
 * By convention the 0 x 0 determinant is 1 and k = -1 gives 0.
 */
Scalar hankel(const DifferenceTable& u, long n, int k, long shift = 0);
Scalar hankel(const SequencePrefix& u, long n, int k);

/**
 * Extended determinant H_k: row r holds Delta^(r m) u_n .. Delta^(r m) u_(n+k-1),
 * r = 0..k-1. H_0 = 1, H_(-1) = 0.
 */
Scalar extended_h(const DifferenceTable& u, long n, int k, int m, long shift = 0);
Scalar extended_h(const SequencePrefix& u, long n, int k, int m);

/**
 * Extended determinant Phi_k: first row is the index row (n, ..., n+k-1),
 * second row u, then Delta^(r m) u for r = 1..k-2. Phi_1 = n, Phi_0 = 1,
 * Phi_(-1) = 0.
 */
Scalar phi(const DifferenceTable& u, long n, int k, int m, long shift = 0);
Scalar phi(const SequencePrefix& u, long n, int k, int m);

Scalar evaluate(const DetSpec& spec, const DifferenceTable& u);

/// Matrix builders, exposed so tests can cross-check the evaluators.
Matrix hankel_matrix(const DifferenceTable& u, long n, int k, long shift = 0);
Matrix extended_h_matrix(const DifferenceTable& u, long n, int k, int m, long shift = 0);
Matrix phi_matrix(const DifferenceTable& u, long n, int k, int m, long shift = 0);

}  // namespace epsalg
