#include "epsalg/determinants.hpp"

namespace epsalg {

namespace {

Mode matrix_mode(const Matrix& m) {
  if (m.empty()) return Mode::Rational;
  return m[0][0].mode();
}

mpfr_prec_t matrix_prec(const Matrix& m) {
  if (m.empty() || m[0][0].mode() != Mode::Float) return 53;
  return m[0][0].precision_bits();
}

}  // namespace

Scalar det_bareiss(Matrix m) {
  const std::size_t n = m.size();
  const Mode mode = matrix_mode(m);
  const mpfr_prec_t prec = matrix_prec(m);
  if (n == 0) return Scalar::one(mode, prec);
  int sign = 1;
  Scalar prev = Scalar::one(mode, prec);
  for (std::size_t c = 0; c + 1 < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return Scalar::zero(mode, prec);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      sign = -sign;
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      for (std::size_t j = c + 1; j < n; ++j) {
        m[r][j] = (m[r][j] * m[c][c] - m[r][c] * m[c][j]) / prev;
      }
      m[r][c] = Scalar::zero(mode, prec);
    }
    prev = m[c][c];
  }
  Scalar d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

Scalar det_partial_pivot(Matrix m) {
  const std::size_t n = m.size();
  const Mode mode = matrix_mode(m);
  const mpfr_prec_t prec = matrix_prec(m);
  if (n == 0) return Scalar::one(mode, prec);
  int sign = 1;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].compare_abs(m[piv][c]) > 0) piv = r;
    }
    if (m[piv][c].is_zero()) return Scalar::zero(mode, prec);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      sign = -sign;
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const Scalar f = m[r][c] / m[c][c];
      for (std::size_t j = c + 1; j < n; ++j) {
        m[r][j] -= f * m[c][j];
      }
    }
  }
  Scalar d = Scalar::one(mode, prec);
  for (std::size_t i = 0; i < n; ++i) d *= m[i][i];
  return sign < 0 ? -d : d;
}

Scalar det_cofactor(const Matrix& m) {
  const std::size_t n = m.size();
  const Mode mode = matrix_mode(m);
  const mpfr_prec_t prec = matrix_prec(m);
  if (n > 4) throw Error("cofactor expansion restricted to dimensions <= 4");
  if (n == 0) return Scalar::one(mode, prec);
  if (n == 1) return m[0][0];
  Scalar sum = Scalar::zero(mode, prec);
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Scalar> row;
      row.reserve(n - 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(m[r][j]);
      }
      minor.push_back(std::move(row));
    }
    const Scalar term = m[0][c] * det_cofactor(minor);
    if (c % 2 != 0) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

Scalar determinant(const Matrix& m) {
  if (matrix_mode(m) == Mode::Rational) return det_bareiss(m);
  return det_partial_pivot(m);
}

Scalar determinant_scale(const Matrix& m) {
  const Mode mode = matrix_mode(m);
  const mpfr_prec_t prec = matrix_prec(m);
  Scalar scale = Scalar::one(mode, prec);
  for (const auto& row : m) {
    Scalar big = Scalar::zero(mode, prec);
    for (const auto& x : row) {
      if (x.compare_abs(big) > 0) big = x.abs();
    }
    scale *= big;
  }
  return scale;
}

Matrix hankel_matrix(const DifferenceTable& u, long n, int k, long shift) {
  Matrix m(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    auto& row = m[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      row.push_back(u.diff(shift, n + i + j));
    }
  }
  return m;
}

Matrix extended_h_matrix(const DifferenceTable& u, long n, int k, int m, long shift) {
  Matrix out(static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) {
    auto& row = out[static_cast<std::size_t>(r)];
    row.reserve(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
      row.push_back(u.diff(shift + static_cast<long>(r) * m, n + c));
    }
  }
  return out;
}

Matrix phi_matrix(const DifferenceTable& u, long n, int k, int m, long shift) {
  const Mode mode = u.mode();
  const mpfr_prec_t prec = u.source().precision_bits();
  Matrix out;
  out.reserve(static_cast<std::size_t>(k));
  std::vector<Scalar> index_row;
  index_row.reserve(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) index_row.push_back(Scalar::from_long(n + c, mode, prec));
  out.push_back(std::move(index_row));
  for (int r = 1; r < k; ++r) {
    std::vector<Scalar> row;
    row.reserve(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
      row.push_back(u.diff(shift + static_cast<long>(r - 1) * m, n + c));
    }
    out.push_back(std::move(row));
  }
  return out;
}

Scalar hankel(const DifferenceTable& u, long n, int k, long shift) {
  const Mode mode = u.mode();
  const mpfr_prec_t prec = u.source().precision_bits();
  if (k < 0) return Scalar::zero(mode, prec);
  if (k == 0) return Scalar::one(mode, prec);
  if (n < 0) throw IndexOutOfRange("negative Hankel base index");
  return determinant(hankel_matrix(u, n, k, shift));
}

Scalar hankel(const SequencePrefix& u, long n, int k) { return hankel(DifferenceTable(u), n, k, 0); }

Scalar extended_h(const DifferenceTable& u, long n, int k, int m, long shift) {
  if (m < 1) throw Error("extended determinant needs m >= 1");
  const Mode mode = u.mode();
  const mpfr_prec_t prec = u.source().precision_bits();
  if (k < 0) return Scalar::zero(mode, prec);
  if (k == 0) return Scalar::one(mode, prec);
  if (n < 0) throw IndexOutOfRange("negative determinant base index");
  return determinant(extended_h_matrix(u, n, k, m, shift));
}

Scalar extended_h(const SequencePrefix& u, long n, int k, int m) {
  return extended_h(DifferenceTable(u), n, k, m, 0);
}

Scalar phi(const DifferenceTable& u, long n, int k, int m, long shift) {
  if (m < 1) throw Error("extended determinant needs m >= 1");
  const Mode mode = u.mode();
  const mpfr_prec_t prec = u.source().precision_bits();
  if (k < 0) return Scalar::zero(mode, prec);
  if (k == 0) return Scalar::one(mode, prec);
  if (n < 0) throw IndexOutOfRange("negative determinant base index");
  if (k == 1) return Scalar::from_long(n, mode, prec);
  return determinant(phi_matrix(u, n, k, m, shift));
}

Scalar phi(const SequencePrefix& u, long n, int k, int m) { return phi(DifferenceTable(u), n, k, m, 0); }

Scalar evaluate(const DetSpec& spec, const DifferenceTable& u) {
  switch (spec.family) {
    case DetFamily::ClassicHankel:
      return hankel(u, spec.n, spec.k, spec.shift);
    case DetFamily::ExtendedH:
      return extended_h(u, spec.n, spec.k, spec.m, spec.shift);
    case DetFamily::Phi:
      return phi(u, spec.n, spec.k, spec.m, spec.shift);
  }
  throw Error("unknown determinant family");
}

}  // namespace epsalg
