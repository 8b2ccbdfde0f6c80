#include "epsalg/shanks.hpp"

namespace epsalg {

namespace {

Scalar det_ratio(const Matrix& num, const Matrix& den, const ZeroPolicy& policy, int kappa, long n) {
  const Scalar d = determinant(den);
  if (is_effectively_zero(d, determinant_scale(den), policy)) {
    throw Breakdown("zero denominator determinant at (k=" + std::to_string(kappa) + ", n=" + std::to_string(n) + ")",
                    kappa, n);
  }
  const Scalar v = num.empty() ? Scalar::one(d.mode(), d.mode() == Mode::Float ? d.precision_bits() : 53)
                               : determinant(num);
  return v / d;
}

}  // namespace

Scalar shanks(const DifferenceTable& seq, int k, long n, const ZeroPolicy& policy) {
  if (k < 0 || n < 0) throw IndexOutOfRange("shanks needs k >= 0 and n >= 0");
  if (n + 2L * k > seq.max_index()) {
    throw IndexOutOfRange("shanks(k=" + std::to_string(k) + ", n=" + std::to_string(n) + ") needs " +
                          std::to_string(n + 2L * k + 1) + " terms");
  }
  if (k == 0) return seq.diff(0, n);
  const Matrix num = hankel_matrix(seq, n, k + 1);
  const Matrix den = hankel_matrix(seq, n, k, 2);
  return det_ratio(num, den, policy, 2 * k, n);
}

Scalar shanks(const SequencePrefix& seq, int k, long n, const ZeroPolicy& policy) {
  return shanks(DifferenceTable(seq), k, n, policy);
}

Scalar multistep_shanks(const DifferenceTable& seq, int m, int k, long n, const ZeroPolicy& policy) {
  if (m < 1) throw Error("multistep transformation needs m >= 1");
  if (k < 0 || n < 0) throw IndexOutOfRange("multistep transformation needs k >= 0 and n >= 0");
  if (n + static_cast<long>(m + 1) * k > seq.max_index()) {
    throw IndexOutOfRange("e_(k,m) at (m=" + std::to_string(m) + ", k=" + std::to_string(k) + ", n=" +
                          std::to_string(n) + ") needs " + std::to_string(n + static_cast<long>(m + 1) * k + 1) +
                          " terms");
  }
  if (k == 0) return seq.diff(0, n);
  const Matrix num = extended_h_matrix(seq, n, k + 1, m);
  const Matrix den = extended_h_matrix(seq, n, k, m, m + 1);
  return det_ratio(num, den, policy, (m + 1) * k, n);
}

Scalar multistep_shanks(const SequencePrefix& seq, int m, int k, long n, const ZeroPolicy& policy) {
  return multistep_shanks(DifferenceTable(seq), m, k, n, policy);
}

Scalar epsilon_entry_det(const DifferenceTable& seq, int m, int kappa, long n, const ZeroPolicy& policy) {
  if (m < 1) throw Error("epsilon entries need m >= 1");
  if (kappa < 0 || n < 0) throw IndexOutOfRange("epsilon entries need kappa >= 0 and n >= 0");
  if (static_cast<long>(kappa) + n > seq.max_index()) {
    throw IndexOutOfRange("epsilon entry (k=" + std::to_string(kappa) + ", n=" + std::to_string(n) + ") needs " +
                          std::to_string(kappa + n + 1) + " terms");
  }
  const int r = kappa % (m + 1);
  if (r == 0) {
    return multistep_shanks(seq, m, kappa / (m + 1), n, policy);
  }
  if (r == 1) {
    const int k = (kappa - 1) / (m + 1) + 1;
    const Matrix num = extended_h_matrix(seq, n, k - 1, m, m + 2);
    const Matrix den = extended_h_matrix(seq, n, k, m, 1);
    return det_ratio(num, den, policy, kappa, n);
  }
  const int i = r;  // 2 <= i <= m
  const int k = (kappa - i) / (m + 1) + 1;
  const Matrix num = phi_matrix(seq, n, k + 1, m, i - 1);
  const Matrix den = extended_h_matrix(seq, n, k, m, i);
  return det_ratio(num, den, policy, kappa, n);
}

Scalar epsilon_entry_det(const SequencePrefix& seq, int m, int kappa, long n, const ZeroPolicy& policy) {
  return epsilon_entry_det(DifferenceTable(seq), m, kappa, n, policy);
}

Scalar multistep_shanks_linear(const DifferenceTable& seq, int m, int k, long n, const ZeroPolicy& policy) {
  if (m < 1) throw Error("multistep transformation needs m >= 1");
  if (k < 0 || n < 0) throw IndexOutOfRange("multistep transformation needs k >= 0 and n >= 0");
  if (n + static_cast<long>(m + 1) * k > seq.max_index()) {
    throw IndexOutOfRange("linear-system transform at (m=" + std::to_string(m) + ", k=" + std::to_string(k) +
                          ", n=" + std::to_string(n) + ") needs " +
                          std::to_string(n + static_cast<long>(m + 1) * k + 1) + " terms");
  }
  const Mode mode = seq.mode();
  const mpfr_prec_t prec = seq.source().precision_bits();
  const std::size_t dim = static_cast<std::size_t>(k) + 1;

  // Augmented system: unknowns (c, a_1..a_k); row j encodes
  // c + sum_i a_i Delta^(im) S_(n+j) = S_(n+j).
  Matrix aug(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    auto& row = aug[j];
    row.reserve(dim + 1);
    row.push_back(Scalar::one(mode, prec));
    for (int i = 1; i <= k; ++i) {
      row.push_back(seq.diff(static_cast<long>(i) * m, n + static_cast<long>(j)));
    }
    row.push_back(seq.diff(0, n + static_cast<long>(j)));
  }

  // Elimination with partial pivoting (exact in Rational mode, where any
  // nonzero pivot works).
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < dim; ++r) {
      if (aug[r][c].compare_abs(aug[piv][c]) > 0) piv = r;
    }
    Scalar col_scale = Scalar::zero(mode, prec);
    for (std::size_t r = c; r < dim; ++r) {
      if (aug[r][c].compare_abs(col_scale) > 0) col_scale = aug[r][c].abs();
    }
    if (is_effectively_zero(aug[piv][c], col_scale, policy) || aug[piv][c].is_zero()) {
      throw SingularSystem("singular linear system at (m=" + std::to_string(m) + ", k=" + std::to_string(k) +
                           ", n=" + std::to_string(n) + ")");
    }
    if (piv != c) std::swap(aug[piv], aug[c]);
    for (std::size_t r = c + 1; r < dim; ++r) {
      const Scalar f = aug[r][c] / aug[c][c];
      for (std::size_t col = c; col <= dim; ++col) {
        aug[r][col] -= f * aug[c][col];
      }
    }
  }
  // Back-substitute; only the first unknown (c) is needed.
  std::vector<Scalar> x(dim, Scalar::zero(mode, prec));
  for (std::size_t r = dim; r-- > 0;) {
    Scalar acc = aug[r][dim];
    for (std::size_t col = r + 1; col < dim; ++col) {
      acc -= aug[r][col] * x[col];
    }
    x[r] = acc / aug[r][r];
  }
  return x[0];
}

Scalar multistep_shanks_linear(const SequencePrefix& seq, int m, int k, long n, const ZeroPolicy& policy) {
  return multistep_shanks_linear(DifferenceTable(seq), m, k, n, policy);
}

bool quasilinearity_check(const SequencePrefix& seq, int m, int k, long n, const Scalar& a, const Scalar& b,
                          const ZeroPolicy& policy) {
  if (a.is_zero()) throw Error("quasilinearity check needs a != 0");
  std::vector<Scalar> mapped;
  mapped.reserve(static_cast<std::size_t>(seq.size()));
  for (const Scalar& s : seq.terms()) mapped.push_back(a * s + b);
  const SequencePrefix scaled(std::move(mapped), seq.label());

  const Scalar lhs = multistep_shanks(DifferenceTable(scaled), m, k, n, policy);
  const Scalar rhs = a * multistep_shanks(DifferenceTable(seq), m, k, n, policy) + b;
  if (seq.mode() == Mode::Rational) return lhs.equals(rhs);
  return is_effectively_zero(lhs - rhs, rhs, policy);
}

}  // namespace epsalg
