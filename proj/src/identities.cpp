#include "epsalg/identities.hpp"

namespace epsalg {

namespace {

// H_k(Delta^a S_n) and Phi_k(Delta^a S_n) from the shared difference table.
Scalar H(const DifferenceTable& s, int m, long a, long n, int k) { return extended_h(s, n, k, m, a); }
Scalar P(const DifferenceTable& s, int m, long a, long n, int k) { return phi(s, n, k, m, a); }

IdentityResult sum_terms(std::vector<Scalar> terms) {
  IdentityResult out;
  out.residual = terms.front();
  out.scale = terms.front().abs();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    out.residual += terms[i];
    if (terms[i].compare_abs(out.scale) > 0) out.scale = terms[i].abs();
  }
  return out;
}

}  // namespace

const char* identity_name(IdentityId id) {
  switch (id) {
    case IdentityId::L1Eq10: return "lemma1";
    case IdentityId::L2Eq11: return "lemma2";
    case IdentityId::L3Eq12: return "lemma3";
    case IdentityId::L3aEq13: return "lemma3-step-a";
    case IdentityId::L3bEq14: return "lemma3-step-b";
    case IdentityId::L4Eq15: return "lemma4";
    case IdentityId::L4aEq16: return "lemma4-step-a";
    case IdentityId::L5Eq17: return "lemma5";
    case IdentityId::BilEq19: return "bilinear-product";
    case IdentityId::BilEq21: return "bilinear-diag-first";
    case IdentityId::BilEq22: return "bilinear-shift-first";
    case IdentityId::BilEq23: return "bilinear-diag";
    case IdentityId::BilEq24: return "bilinear-shift";
    case IdentityId::Cor2: return "corollary2";
  }
  return "unknown";
}

IdentityResult check_identity_detailed(const IdentityCase& c, const DifferenceTable& s) {
  const int m = c.m;
  const int k = c.k;
  const long n = c.n;
  const long i = c.i;
  switch (c.id) {
    case IdentityId::L1Eq10:
      return sum_terms({H(s, m, 1, n, k + 1) * H(s, m, m, n + 1, k),
                        -(H(s, m, m + 1, n, k) * H(s, m, 0, n + 1, k + 1)),
                        H(s, m, m + 1, n + 1, k) * H(s, m, 0, n, k + 1)});
    case IdentityId::L2Eq11:
      return sum_terms({H(s, m, i + 1, n, k) * H(s, m, i, n + 1, k - 1),
                        -(H(s, m, i + 1, n, k - 1) * H(s, m, i, n + 1, k)),
                        H(s, m, i + 1, n + 1, k - 1) * H(s, m, i, n, k)});
    case IdentityId::L3Eq12:
      return sum_terms({H(s, m, 1, n, k) * H(s, m, m, n + 1, k),
                        -(H(s, m, m + 1, n, k) * H(s, m, 0, n + 1, k)),
                        H(s, m, 0, n, k + 1) * H(s, m, m + 1, n + 1, k - 1)});
    case IdentityId::L3aEq13:
      return sum_terms({H(s, m, m + 1, n, k) * H(s, m, m, n + 1, k - 1),
                        -(H(s, m, m + 1, n, k - 1) * H(s, m, m, n + 1, k)),
                        H(s, m, m + 1, n + 1, k - 1) * H(s, m, m, n, k)});
    case IdentityId::L3bEq14:
      return sum_terms({H(s, m, 0, n, k + 1) * H(s, m, m, n + 1, k - 1),
                        -(H(s, m, 0, n, k) * H(s, m, m, n + 1, k)),
                        H(s, m, 0, n + 1, k) * H(s, m, m, n, k)});
    case IdentityId::L4Eq15:
      return sum_terms({H(s, m, i, n + 1, k) * H(s, m, i + 2, n, k - 1),
                        -(H(s, m, i + 1, n, k) * P(s, m, i, n + 1, k)),
                        H(s, m, i + 1, n + 1, k - 1) * P(s, m, i, n, k + 1)});
    case IdentityId::L4aEq16:
      return sum_terms({H(s, m, i + 2, n, k) * H(s, m, i, n + 1, k),
                        -(H(s, m, i + 1, n, k) * P(s, m, i, n + 1, k + 1)),
                        H(s, m, i + 1, n + 1, k) * P(s, m, i, n, k + 1)});
    case IdentityId::L5Eq17:
      return sum_terms({H(s, m, 1, n, k) * H(s, m, m + 1, n + 1, k - 2),
                        -(H(s, m, m + 1, n + 1, k - 1) * H(s, m, 1, n, k - 1)),
                        H(s, m, m + 1, n, k - 1) * H(s, m, 1, n + 1, k - 1)});
    case IdentityId::Cor2:
      return sum_terms({f_value(s, m, k + m + 1, n) * f_value(s, m, k - 1, n + 1),
                        -(f_value(s, m, k, n) * f_value(s, m, k + m, n + 1)),
                        f_value(s, m, k + m, n) * f_value(s, m, k, n + 1)});
    case IdentityId::BilEq19: {
      Scalar lhs = f_value(s, m, k + m + 1, n) * g_value(s, m, k, n + 1) -
                   f_value(s, m, k, n + 1) * g_value(s, m, k + m + 1, n);
      Scalar rhs = -(f_value(s, m, k + 1, n) * f_value(s, m, k + m, n + 1));
      for (int j = 1; j <= m; ++j) {
        lhs *= f_value(s, m, k + j, n) * g_value(s, m, k + j, n + 1) -
               f_value(s, m, k + j, n + 1) * g_value(s, m, k + j, n);
        rhs *= f_value(s, m, k + j + 1, n) * f_value(s, m, k + j - 1, n + 1);
      }
      return sum_terms({lhs, -rhs});
    }
    case IdentityId::BilEq21: {
      const int line = (m + 1) * k + 1;
      return sum_terms({f_value(s, m, line, n) * g_value(s, m, line, n + 1),
                        -(f_value(s, m, line, n + 1) * g_value(s, m, line, n)),
                        f_value(s, m, line + 1, n) * f_value(s, m, line - 1, n + 1)});
    }
    case IdentityId::BilEq22: {
      const int line = (m + 1) * k + 1;
      const int prev = (m + 1) * (k - 1) + 1;
      return sum_terms({f_value(s, m, line, n) * g_value(s, m, prev, n + 1),
                        -(f_value(s, m, prev, n + 1) * g_value(s, m, line, n)),
                        f_value(s, m, prev + 1, n) * f_value(s, m, line - 1, n + 1)});
    }
    case IdentityId::BilEq23: {
      const int line = (m + 1) * k + static_cast<int>(i);
      return sum_terms({f_value(s, m, line, n) * g_value(s, m, line, n + 1),
                        -(f_value(s, m, line, n + 1) * g_value(s, m, line, n)),
                        -(f_value(s, m, line + 1, n) * f_value(s, m, line - 1, n + 1))});
    }
    case IdentityId::BilEq24: {
      const int line = (m + 1) * k + static_cast<int>(i);
      const int prev = (m + 1) * (k - 1) + static_cast<int>(i);
      return sum_terms({f_value(s, m, line, n) * g_value(s, m, prev, n + 1),
                        -(f_value(s, m, prev, n + 1) * g_value(s, m, line, n)),
                        -(f_value(s, m, prev + 1, n) * f_value(s, m, line - 1, n + 1))});
    }
  }
  throw Error("unknown identity");
}

Scalar check_identity(const IdentityCase& c, const DifferenceTable& s) {
  return check_identity_detailed(c, s).residual;
}

Scalar check_identity(const IdentityCase& c, const SequencePrefix& seq) {
  return check_identity(c, DifferenceTable(seq));
}

namespace {

/// line = (m+1)(k-1) + i with i in 1..m+1.
void decompose_line(int m, int line, int& k, int& i) {
  int r = line % (m + 1);
  if (r < 0) r += m + 1;
  i = (r == 0) ? (m + 1) : r;
  k = (line - i) / (m + 1) + 1;
}

}  // namespace

Scalar f_value(const DifferenceTable& s, int m, int line, long n) {
  if (line < -m) throw IndexOutOfRange("F line below -m");
  int k = 0, i = 0;
  decompose_line(m, line, k, i);
  return H(s, m, i, n, k);
}

Scalar g_value(const DifferenceTable& s, int m, int line, long n) {
  if (line < -m) throw IndexOutOfRange("G line below -m");
  int k = 0, i = 0;
  decompose_line(m, line, k, i);
  if (i == m + 1) return H(s, m, 0, n, k + 1);  // line (m+1)k
  if (i == 1) return H(s, m, m + 2, n, k - 1);  // line (m+1)(k-1)+1
  return P(s, m, i - 1, n, k + 1);              // lines with 2 <= i <= m
}

Scalar bilinear_relation19_residual(const DifferenceTable& s, int m, int kappa, long n) {
  IdentityCase c;
  c.id = IdentityId::BilEq19;
  c.m = m;
  c.k = kappa;
  c.n = n;
  return check_identity(c, s);
}

std::vector<std::pair<IdentityId, Scalar>> check_bilinear(const DifferenceTable& s, int m, int k, long n, int i) {
  if (i < 2 || i > m + 1) throw Error("bilinear relations need i in 2..m+1");
  std::vector<std::pair<IdentityId, Scalar>> out;
  IdentityCase c;
  c.m = m;
  c.k = k;
  c.n = n;
  c.i = i;
  for (IdentityId id : {IdentityId::BilEq21, IdentityId::BilEq22, IdentityId::BilEq23, IdentityId::BilEq24}) {
    c.id = id;
    out.emplace_back(id, check_identity(c, s));
  }
  // The assembled product relation, at the base line matching (k, i).
  out.emplace_back(IdentityId::BilEq19, bilinear_relation19_residual(s, m, (m + 1) * (k - 1) + i, n));
  return out;
}

std::vector<std::pair<IdentityId, Scalar>> check_bilinear(const SequencePrefix& seq, int m, int k, long n, int i) {
  return check_bilinear(DifferenceTable(seq), m, k, n, i);
}

Scalar check_corollary2(const DifferenceTable& s, int m, int k, long n) {
  IdentityCase c;
  c.id = IdentityId::Cor2;
  c.m = m;
  c.k = k;
  c.n = n;
  return check_identity(c, s);
}

Scalar check_corollary2(const SequencePrefix& seq, int m, int k, long n) {
  return check_corollary2(DifferenceTable(seq), m, k, n);
}

Scalar check_sylvester(const Matrix& matrix) {
  const std::size_t dim = matrix.size();
  if (dim < 3) throw DimensionTooSmall("sylvester identity needs dimension >= 3");
  for (const auto& row : matrix) {
    if (row.size() != dim) throw Error("sylvester identity needs a square matrix");
  }
  auto minor = [&](std::size_t r0, std::size_t c0) {
    Matrix out(dim - 1);
    for (std::size_t r = 0; r < dim - 1; ++r) {
      auto& row = out[r];
      row.reserve(dim - 1);
      for (std::size_t c = 0; c < dim - 1; ++c) {
        row.push_back(matrix[r0 + r][c0 + c]);
      }
    }
    return out;
  };
  Matrix core(dim - 2);
  for (std::size_t r = 0; r < dim - 2; ++r) {
    auto& row = core[r];
    row.reserve(dim - 2);
    for (std::size_t c = 0; c < dim - 2; ++c) {
      row.push_back(matrix[r + 1][c + 1]);
    }
  }
  const Scalar whole = determinant(matrix);
  const Scalar inner = determinant(core);
  const Scalar nw = determinant(minor(0, 0));
  const Scalar se = determinant(minor(1, 1));
  const Scalar ne = determinant(minor(0, 1));
  const Scalar sw = determinant(minor(1, 0));
  return whole * inner - (nw * se - ne * sw);
}

namespace {

struct SweepGrid {
  IdentityId id;
  int k_lo;
  bool uses_i;
  int i_lo;
};

}  // namespace

long sweep_identities(const DifferenceTable& seq, int m,
                      const std::function<void(const IdentityCase&, const IdentityResult&)>& fn) {
  const long N = seq.max_index();
  long cases = 0;
  // The bordered form behind the Phi x H identity needs a nonempty core, so
  // that grid starts at k = 1; everything else degenerates gracefully at the
  // k = 0 edge through the H_0 / H_(-1) conventions.
  static const SweepGrid grids[] = {
      {IdentityId::L1Eq10, 0, false, 0},  {IdentityId::L2Eq11, 0, true, 0},
      {IdentityId::L3Eq12, 0, false, 0},  {IdentityId::L3aEq13, 0, false, 0},
      {IdentityId::L3bEq14, 0, false, 0}, {IdentityId::L4Eq15, 1, true, 0},
      {IdentityId::L4aEq16, 0, true, 0},  {IdentityId::L5Eq17, 0, false, 0},
      {IdentityId::BilEq21, 0, false, 0}, {IdentityId::BilEq22, 0, false, 0},
      {IdentityId::BilEq23, 0, true, 2},  {IdentityId::BilEq24, 0, true, 2},
  };
  // Depth grows with each of k, i and n, so the first failing index prunes
  // the rest of its loop.
  for (const auto& g : grids) {
    for (int k = g.k_lo; k <= static_cast<int>(N); ++k) {
      const int i_hi = g.uses_i ? ((g.i_lo == 2) ? m + 1 : static_cast<int>(N)) : g.i_lo;
      bool any_for_k = false;
      for (int i = g.i_lo; i <= i_hi; ++i) {
        bool any_for_i = false;
        for (long n = 0; n <= N; ++n) {
          IdentityCase c;
          c.id = g.id;
          c.m = m;
          c.k = k;
          c.n = n;
          c.i = i;
          try {
            const IdentityResult r = check_identity_detailed(c, seq);
            fn(c, r);
            ++cases;
            any_for_i = true;
            any_for_k = true;
          } catch (const IndexOutOfRange&) {
            break;
          }
        }
        if (!any_for_i) break;
      }
      if (!any_for_k) break;
    }
  }
  // The product relation and the G-free relation live on lattice lines.
  for (IdentityId id : {IdentityId::BilEq19, IdentityId::Cor2}) {
    const int line_lo = (id == IdentityId::Cor2) ? -m + 1 : -m;
    for (int line = line_lo; line <= static_cast<int>(N); ++line) {
      bool any_for_line = false;
      for (long n = 0; n <= N; ++n) {
        IdentityCase c;
        c.id = id;
        c.m = m;
        c.k = line;
        c.n = n;
        try {
          const IdentityResult r = check_identity_detailed(c, seq);
          fn(c, r);
          ++cases;
          any_for_line = true;
        } catch (const IndexOutOfRange&) {
          break;
        }
      }
      if (!any_for_line) break;
    }
  }
  return cases;
}

}  // namespace epsalg
