#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "arrfree/arrangement.hpp"
#include "arrfree/matrix.hpp"
#include "arrfree/mpoly.hpp"

namespace arrfree {

// Graded pieces of logarithmic modules are cut out of coefficient space by
// linear conditions of the shape  alpha^k | P  with P a linear combination of
// the unknown coefficient blocks. This header assembles those conditions as
// integer matrices; ranks and kernels come from matrix.hpp.

inline std::vector<Exponents> homogeneous_monomials(int nvars, int deg) {
  std::vector<Exponents> out;
  if (deg < 0) return out;
  if (nvars == 0) {
    if (deg == 0) out.push_back({});
    return out;
  }
  Exponents cur(nvars, 0);
  std::function<void(int, int)> rec = [&](int var, int rest) {
    if (var == nvars - 1) {
      cur[var] = rest;
      out.push_back(cur);
      return;
    }
    for (int e = rest; e >= 0; --e) {
      cur[var] = e;
      rec(var + 1, rest - e);
    }
  };
  rec(0, deg);
  return out;
}

inline std::map<Exponents, long> monomial_index(const std::vector<Exponents>& monos) {
  std::map<Exponents, long> idx;
  for (size_t i = 0; i < monos.size(); ++i) idx.emplace(monos[i], (long)i);
  return idx;
}

// Lexicographically ordered p-element subsets of {0..n-1}.
inline std::vector<std::vector<int>> p_subsets(int n, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > n) return out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if ((int)cur.size() == p) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= n - (p - (int)cur.size()); ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace detail {

// Growing dense integer row set over a fixed number of columns.
struct LinearSystem {
  long cols = 0;
  std::vector<std::vector<Integer>> rows;

  explicit LinearSystem(long c) : cols(c) {}
  std::vector<Integer>& new_row() {
    rows.emplace_back(cols, Integer(0));
    return rows.back();
  }
  ZMatrix matrix() const {
    ZMatrix m((long)rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
      for (long j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    return m;
  }
};

// Appends the rows that force alpha^k | P for the homogeneous degree-D
// polynomial P = sum_b coeff_b * (unknown block b). The condition is
// linearized through iterated directional derivatives: alpha^k | P iff the
// restriction of d^j P / dz_piv^j to {alpha = 0} vanishes for j < k. Rows are
// scaled integral by powers of the pivot coefficient.
inline void append_divisibility_rows(LinearSystem& sys, int nvars, int D,
                                     const std::vector<Exponents>& monos,
                                     const std::vector<std::pair<long, Integer>>& blocks,
                                     const std::vector<Integer>& alpha, long k) {
  if (k <= 0 || D < 0) return;
  int piv = -1;
  for (int j = 0; j < nvars; ++j)
    if (alpha[j] != 0) {
      piv = j;
      break;
    }
  if (piv < 0) throw std::invalid_argument("zero form in divisibility condition");
  const Integer& ap = alpha[piv];

  // powers of the substitution form -sum_{i != piv} alpha_i z_i, in the
  // reduced variables (piv removed)
  const int rv = nvars - 1;
  std::vector<std::map<Exponents, Integer>> pw(D + 1);
  pw[0].emplace(Exponents(rv, 0), Integer(1));
  std::vector<Integer> sub(rv);
  for (int j = 0, t = 0; j < nvars; ++j)
    if (j != piv) sub[t++] = -alpha[j];
  for (int m = 1; m <= D; ++m)
    for (const auto& [e, c] : pw[m - 1])
      for (int i = 0; i < rv; ++i) {
        if (sub[i] == 0) continue;
        Exponents f = e;
        ++f[i];
        pw[m][f] += c * sub[i];
      }

  for (long j = 0; j < std::min<long>(k, D + 1); ++j) {
    const auto tmon = homogeneous_monomials(rv, D - j);
    const auto tidx = monomial_index(tmon);
    const long row0 = (long)sys.rows.size();
    for (size_t t = 0; t < tmon.size(); ++t) sys.new_row();
    for (size_t c = 0; c < monos.size(); ++c) {
      const Exponents& e = monos[c];
      if (e[piv] < j) continue;
      const long m = e[piv] - j;
      Integer ff = 1;  // falling factorial e_piv (e_piv - 1) ... (e_piv - j + 1)
      for (long s = 0; s < j; ++s) ff *= e[piv] - s;
      const Integer scale = ff * int_pow(ap, (unsigned long)(D - j - m));
      Exponents base(rv);
      for (int i = 0, t = 0; i < nvars; ++i)
        if (i != piv) base[t++] = e[i];
      for (const auto& [g, cg] : pw[m]) {
        Exponents target = base;
        for (int i = 0; i < rv; ++i) target[i] += g[i];
        const long r = row0 + tidx.at(target);
        const Integer v = scale * cg;
        for (const auto& [off, cb] : blocks) sys.rows[r][off + c] += cb * v;
      }
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Derivation side: the degree-d piece of { theta = sum_i p_i d/dz_i :
// alpha_H^{k(H)} | theta(alpha_H) } with deg p_i = d. Unknowns are laid out
// as nvars blocks of the degree-d monomial coefficients.
inline detail::LinearSystem derivation_conditions(const Multiarrangement& m, long d) {
  const int l = m.base.dim;
  const auto monos = homogeneous_monomials(l, (int)d);
  const long dimS = (long)monos.size();
  detail::LinearSystem sys(l * dimS);
  if (d < 0) return detail::LinearSystem(0);
  for (int h = 0; h < m.base.size(); ++h) {
    if (m.mult[h] == 0) continue;
    const auto alpha = m.base.primitive_form(h);
    std::vector<std::pair<long, Integer>> blocks;
    for (int i = 0; i < l; ++i)
      if (alpha[i] != 0) blocks.emplace_back(i * dimS, alpha[i]);
    detail::append_divisibility_rows(sys, l, (int)d, monos, blocks, alpha, m.mult[h]);
  }
  return sys;
}

inline long derivation_space_dim(const Multiarrangement& m, long d,
                                 RankMode mode = RankMode::Auto) {
  if (d < 0) return 0;
  const auto sys = derivation_conditions(m, d);
  return sys.cols - rank(sys.matrix(), mode);
}

// Homogeneous basis of the degree-d derivation piece, as vectors of
// coefficient polynomials (p_1, ..., p_l).
struct GradedBasis {
  long degree = 0;
  std::vector<std::vector<MPoly>> elements;

  long dimension() const { return (long)elements.size(); }
};

inline GradedBasis derivation_space(const Multiarrangement& m, long d) {
  GradedBasis out;
  out.degree = d;
  if (d < 0) return out;
  const int l = m.base.dim;
  const auto monos = homogeneous_monomials(l, (int)d);
  const long dimS = (long)monos.size();
  const auto sys = derivation_conditions(m, d);
  for (const auto& v : kernel_basis(sys.matrix())) {
    std::vector<MPoly> comp(l, MPoly(l));
    for (int i = 0; i < l; ++i)
      for (long c = 0; c < dimS; ++c)
        if (v[i * dimS + c] != 0) comp[i].add_term(monos[c], v[i * dimS + c]);
    out.elements.push_back(std::move(comp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Omega side: the degree-d piece of Omega^p(A,k). Elements are represented by
// their polynomial numerators eta (the form is eta / Q(A,k)), with blocks
// indexed by the lex-ordered p-subsets of coordinates and numerator degree
// D = d + |k|; deg(omega) = deg(eta) - |k| and basis p-forms carry degree 0.
// The membership condition is alpha_H^{k(H)} | d(alpha_H) ^ eta, componentwise.
inline detail::LinearSystem omega_conditions(const Multiarrangement& m, int p, long d) {
  const int l = m.base.dim;
  if (p < 0 || p > l) throw std::invalid_argument("form degree out of range");
  const long D = d + m.total_multiplicity();
  const auto monos = homogeneous_monomials(l, (int)D);
  const long dimS = (long)monos.size();
  const auto blocks_I = p_subsets(l, p);
  detail::LinearSystem sys((long)blocks_I.size() * dimS);
  if (D < 0) return detail::LinearSystem(0);

  std::map<std::vector<int>, long> block_of;
  for (size_t b = 0; b < blocks_I.size(); ++b) block_of.emplace(blocks_I[b], (long)b);

  for (int h = 0; h < m.base.size(); ++h) {
    if (m.mult[h] == 0) continue;
    const auto alpha = m.base.primitive_form(h);
    int piv = -1;
    for (int j = 0; j < l; ++j)
      if (alpha[j] != 0) {
        piv = j;
        break;
      }
    // components of d(alpha) ^ eta over (p+1)-subsets J; those omitting the
    // pivot are integer combinations of the ones through it, so they are
    // redundant for the divisibility condition
    for (const auto& J : p_subsets(l, p + 1)) {
      if (std::find(J.begin(), J.end(), piv) == J.end()) continue;
      std::vector<std::pair<long, Integer>> blocks;
      for (size_t s = 0; s < J.size(); ++s) {
        if (alpha[J[s]] == 0) continue;
        std::vector<int> I;
        for (size_t t = 0; t < J.size(); ++t)
          if (t != s) I.push_back(J[t]);
        const Integer sign = (s % 2 == 0) ? 1 : -1;
        blocks.emplace_back(block_of.at(I) * dimS, sign * alpha[J[s]]);
      }
      detail::append_divisibility_rows(sys, l, (int)D, monos, blocks, alpha, m.mult[h]);
    }
  }
  return sys;
}

inline long omega_space_dim(const Multiarrangement& m, int p, long d,
                            RankMode mode = RankMode::Auto) {
  if (d + m.total_multiplicity() < 0) return 0;
  const auto sys = omega_conditions(m, p, d);
  return sys.cols - rank(sys.matrix(), mode);
}

// Basis of the degree-d piece; element components follow p_subsets order.
inline GradedBasis omega_space(const Multiarrangement& m, int p, long d) {
  GradedBasis out;
  out.degree = d;
  const int l = m.base.dim;
  const long D = d + m.total_multiplicity();
  if (D < 0) return out;
  const auto monos = homogeneous_monomials(l, (int)D);
  const long dimS = (long)monos.size();
  const long nblocks = (long)p_subsets(l, p).size();
  const auto sys = omega_conditions(m, p, d);
  for (const auto& v : kernel_basis(sys.matrix())) {
    std::vector<MPoly> comp(nblocks, MPoly(l));
    for (long b = 0; b < nblocks; ++b)
      for (long c = 0; c < dimS; ++c)
        if (v[b * dimS + c] != 0) comp[b].add_term(monos[c], v[b * dimS + c]);
    out.elements.push_back(std::move(comp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graded restriction images. The arrangement must already be in adapted
// coordinates with hyperplane h = {w_1 = 0} at index h; the restriction of
// omega = eta/Q keeps the components without dw_1 and evaluates eta_I / w_1
// at w_1 = 0. Its kernel inside the graded piece is cut out by the
// coefficient slices with w_1-exponent equal to 1.
struct ImageDims {
  long dim_source = 0;  // graded piece upstairs
  long dim_image = 0;   // image downstairs
};

inline ImageDims omega_restriction_image(const Arrangement& adapted, int p, long d,
                                         RankMode mode = RankMode::Auto) {
  const Multiarrangement simple{Arrangement(adapted)};
  const int l = adapted.dim;
  const long D = d + adapted.size();
  ImageDims out;
  if (D < 0) return out;
  const auto monos = homogeneous_monomials(l, (int)D);
  const long dimS = (long)monos.size();
  const auto blocks_I = p_subsets(l, p);
  auto sys = omega_conditions(simple, p, d);
  const long rank_c = rank(sys.matrix(), mode);
  out.dim_source = sys.cols - rank_c;
  for (size_t b = 0; b < blocks_I.size(); ++b) {
    if (std::find(blocks_I[b].begin(), blocks_I[b].end(), 0) != blocks_I[b].end()) continue;
    for (long c = 0; c < dimS; ++c)
      if (monos[c][0] == 1) {
        auto& row = sys.new_row();
        row[b * dimS + c] = 1;
      }
  }
  out.dim_image = rank(sys.matrix(), mode) - rank_c;
  return out;
}

// Derivation-side restriction image (Ziegler's map): theta in D_0(A) with
// theta(w_1) = 0, restricted to w_1 = 0. Arrangement in adapted coordinates;
// the kernel is cut out by the coefficient slices with w_1-exponent 0.
inline ImageDims deriv0_restriction_image(const Arrangement& adapted, long d,
                                          RankMode mode = RankMode::Auto) {
  const int l = adapted.dim;
  ImageDims out;
  if (d < 0) return out;
  const auto monos = homogeneous_monomials(l, (int)d);
  const long dimS = (long)monos.size();
  detail::LinearSystem sys((l - 1) * dimS);  // blocks: d/dw_2 .. d/dw_l
  for (int h = 0; h < adapted.size(); ++h) {
    const auto alpha = adapted.primitive_form(h);
    std::vector<std::pair<long, Integer>> blocks;
    for (int i = 1; i < l; ++i)
      if (alpha[i] != 0) blocks.emplace_back((i - 1) * dimS, alpha[i]);
    if (blocks.empty()) continue;  // the hyperplane w_1 = 0 itself
    detail::append_divisibility_rows(sys, l, (int)d, monos, blocks, alpha, 1);
  }
  const long rank_c = rank(sys.matrix(), mode);
  out.dim_source = sys.cols - rank_c;
  for (int b = 0; b < l - 1; ++b)
    for (long c = 0; c < dimS; ++c)
      if (monos[c][0] == 0) {
        auto& row = sys.new_row();
        row[b * dimS + c] = 1;
      }
  out.dim_image = rank(sys.matrix(), mode) - rank_c;
  return out;
}

}  // namespace arrfree
