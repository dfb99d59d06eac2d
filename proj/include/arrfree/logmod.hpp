#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "arrfree/gradedspace.hpp"
#include "arrfree/lattice.hpp"

namespace arrfree {

// Q(A,k) = prod alpha_H^{k(H)}, built from the primitive integer forms.
inline MPoly defining_polynomial(const Multiarrangement& m) {
  MPoly q = MPoly::constant(m.base.dim, Rational(1));
  for (int h = 0; h < m.base.size(); ++h) {
    if (m.mult[h] == 0) continue;
    const auto prim = m.base.primitive_form(h);
    Form f(prim.size());
    for (size_t j = 0; j < prim.size(); ++j) f[j] = Rational(prim[j]);
    const MPoly lin = MPoly::linear_form(f);
    for (long t = 0; t < m.mult[h]; ++t) q = q * lin;
  }
  return q;
}

// A sound witness of freeness: derivations whose coefficient determinant is
// a nonzero scalar multiple of Q(A,k). By Saito's criterion the witness
// proves freeness with the stated degrees; absence of a witness proves
// nothing.
struct FreenessCertificate {
  std::vector<long> degrees;
  std::vector<std::vector<MPoly>> derivations;  // derivations[i][j] = coefficient of d/dz_j
  Rational scalar;                              // det(theta_i(z_j)) = scalar * Q(A,k)
};

namespace detail {

// det(theta_i(z_j)) == c * Q with c != 0, returning c.
inline std::optional<Rational> saito_scalar(const MPoly& q,
                                            const std::vector<std::vector<MPoly>>& ders) {
  const MPoly det = determinant(ders);
  if (det.is_zero() || q.is_zero()) return std::nullopt;
  const auto& [lead_mono, lead_coef] = *q.terms.rbegin();
  const Rational c = det.coefficient(lead_mono) / lead_coef;
  if (c == 0) return std::nullopt;
  if (!(c * q == det)) return std::nullopt;
  return c;
}

}  // namespace detail

// Searches for a Saito certificate at the requested degrees: one greedy pass
// over the graded bases, then generic small-integer combinations (5 retries,
// deterministic seed). Throws on a degree multiset whose sum violates the
// Saito degree count.
inline std::optional<FreenessCertificate> saito_certificate(const Multiarrangement& m,
                                                            std::vector<long> degrees) {
  const int l = m.base.dim;
  if ((int)degrees.size() != l)
    throw std::invalid_argument("certificate needs one degree per dimension");
  if (!is_essential(m.base))
    throw std::invalid_argument("saito_certificate requires an essential multiarrangement");
  long sum = 0;
  for (long d : degrees) sum += d;
  if (sum != m.total_multiplicity()) throw std::invalid_argument("degree sum mismatch");
  std::sort(degrees.begin(), degrees.end());

  const MPoly q = defining_polynomial(m);
  std::map<long, GradedBasis> bases;
  for (long d : degrees)
    if (!bases.count(d)) bases.emplace(d, derivation_space(m, d));

  std::mt19937 rng(0x5a17u + 1315423911u * (unsigned)m.base.size() + (unsigned)sum);
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::vector<std::vector<MPoly>> ders;
    std::map<long, int> used;
    bool feasible = true;
    for (long d : degrees) {
      const GradedBasis& b = bases.at(d);
      if (b.dimension() == 0) {
        feasible = false;
        break;
      }
      if (attempt == 0) {
        const int i = used[d]++;
        if (i >= b.dimension()) {
          feasible = false;
          break;
        }
        ders.push_back(b.elements[i]);
      } else {
        std::vector<MPoly> combo(l, MPoly(l));
        for (const auto& elem : b.elements) {
          const long c = (long)(rng() % 7) - 3;
          if (c == 0) continue;
          for (int j = 0; j < l; ++j) combo[j] = combo[j] + Rational(c) * elem[j];
        }
        ders.push_back(std::move(combo));
      }
    }
    if (!feasible) {
      if (attempt == 0) continue;
      break;  // some requested degree has an empty graded piece
    }
    if (const auto c = detail::saito_scalar(q, ders)) {
      FreenessCertificate cert;
      cert.degrees = degrees;
      cert.derivations = std::move(ders);
      cert.scalar = *c;
      return cert;
    }
  }
  return std::nullopt;
}

// Multiexponents of an essential rank-2 multiarrangement: always free, with
// d_1 = the smallest degree carrying a nonzero derivation and
// d_2 = |k| - d_1. Returns the exponents with a Saito certificate.
struct Rank2Exponents {
  long d1 = 0, d2 = 0;
  FreenessCertificate cert;
};

inline Rank2Exponents rank2_multiexponents(const Multiarrangement& m) {
  if (m.base.dim != 2 || !is_essential(m.base))
    throw std::invalid_argument("rank2_multiexponents requires an essential rank-2 multiarrangement");
  const long total = m.total_multiplicity();
  long d1 = -1;
  for (long d = 0; 2 * d <= total; ++d)
    if (derivation_space_dim(m, d, RankMode::Exact) > 0) {
      d1 = d;
      break;
    }
  if (d1 < 0) throw std::logic_error("rank-2 multiarrangement without low-degree derivation");
  Rank2Exponents out;
  out.d1 = d1;
  out.d2 = total - d1;
  auto cert = saito_certificate(m, {out.d1, out.d2});
  if (!cert) throw std::logic_error("rank-2 multiarrangement must carry a Saito certificate");
  out.cert = std::move(*cert);
  return out;
}

// ---------------------------------------------------------------------------
// Ziegler's restriction of a logarithmic 1-form, in coordinates adapted so
// that the restricting hyperplane is {z_1 = 0} (its form is e_1). Input and
// output are numerator component vectors; the degree of the form is
// preserved. The logarithmic condition at z_1 forces z_1 | eta_i for i >= 2,
// which is re-checked at runtime.
inline std::vector<MPoly> restrict_log_oneform(const Arrangement& adapted,
                                               const std::vector<MPoly>& eta) {
  const int l = adapted.dim;
  if ((int)eta.size() != l) throw std::invalid_argument("one-form needs l components");
  std::vector<MPoly> out;
  for (int i = 1; i < l; ++i) {
    const auto quot = eta[i].divide_var_power(0, 1);
    if (!quot) throw std::logic_error("restriction: numerator not divisible by z_1");
    MPoly restricted = quot->set_var_zero(0);
    // re-index into the l-1 coordinates of the hyperplane
    MPoly small(l - 1);
    for (const auto& [e, c] : restricted.terms)
      small.terms.emplace(Exponents(e.begin() + 1, e.end()), c);
    out.push_back(std::move(small));
  }
  // sanity: the image must satisfy the restricted multiarrangement conditions
  int h = -1;
  for (int i = 0; i < adapted.size(); ++i) {
    const auto prim = adapted.primitive_form(i);
    bool is_e1 = prim[0] == 1;
    for (int j = 1; j < l && is_e1; ++j) is_e1 = prim[j] == 0;
    if (is_e1) {
      h = i;
      break;
    }
  }
  if (h < 0) throw std::invalid_argument("adapted arrangement lacks the hyperplane z_1 = 0");
  const Multiarrangement restricted = ziegler_restriction(adapted, h);
  long deg_eta = -1;
  for (const auto& p : eta)
    if (!p.is_zero()) deg_eta = std::max(deg_eta, p.total_degree());
  if (deg_eta >= 0) {
    const long d = (deg_eta - 1) - restricted.total_multiplicity();
    const auto sys = omega_conditions(restricted, 1, d);
    const auto monos = homogeneous_monomials(l - 1, (int)(deg_eta - 1));
    const auto midx = monomial_index(monos);
    std::vector<Rational> v(sys.cols, Rational(0));
    for (int i = 0; i < l - 1; ++i)
      for (const auto& [e, c] : out[i].terms) v[i * (long)monos.size() + midx.at(e)] = c;
    for (const auto& row : sys.rows) {
      Rational dot(0);
      for (long j = 0; j < sys.cols; ++j)
        if (v[j] != 0) dot += Rational(row[j]) * v[j];
      if (dot != 0) throw std::logic_error("restricted form fails the target conditions");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graded cokernel of the Ziegler restriction map on 1-forms for an essential
// 3-arrangement: sweeps degrees from -(#A - 1) upward, accumulating
// dim Omega^1(A^h,k)_d - dim M^1_d until the deficit vanishes for
// (d_3' + 2) consecutive degrees.
struct CodimSweep {
  long d2p = 0, d3p = 0;                        // multiexponents of the restriction
  std::vector<std::pair<long, long>> deficits;  // (degree, deficit), nonzero entries
  long total = 0;
};

inline Arrangement adapted_arrangement(const Arrangement& a, int h) {
  const AdaptedCoords ac = adapted_coords(a, h);
  Arrangement out(a.dim);
  out.infinity = a.infinity;
  for (int i = 0; i < a.size(); ++i) {
    const auto w = apply_form_map(ac, a.primitive_form(i));
    Form f(w.size());
    for (size_t j = 0; j < w.size(); ++j) f[j] = Rational(w[j]);
    out.add_form(std::move(f));
  }
  return out;
}

inline CodimSweep codim_restriction_sweep(const Arrangement& a, int h) {
  if (a.dim != 3 || !is_essential(a))
    throw std::invalid_argument("codim sweep requires an essential 3-arrangement");
  CodimSweep out;
  const Multiarrangement restricted = ziegler_restriction(a, h);
  const auto exps = rank2_multiexponents(restricted);
  out.d2p = exps.d1;
  out.d3p = exps.d2;

  const Arrangement adapted = adapted_arrangement(a, h);
  const long window = out.d3p + 2;
  const long start = -(a.size() - 1);
  long consecutive_zero = 0;
  for (long d = start; consecutive_zero < window; ++d) {
    if (d > a.size() + out.d3p + 8)
      throw std::logic_error("codim sweep failed to stabilize");
    const long dim_target = omega_space_dim(restricted, 1, d);
    long dim_image = omega_restriction_image(adapted, 1, d).dim_image;
    long deficit = dim_target - dim_image;
    if (deficit < 0) {
      // a modular rank undercounted; redo this degree exactly
      const long exact_target = omega_space_dim(restricted, 1, d, RankMode::Exact);
      dim_image = omega_restriction_image(adapted, 1, d, RankMode::Exact).dim_image;
      deficit = exact_target - dim_image;
      if (deficit < 0) throw std::logic_error("restriction image exceeds the target space");
    }
    if (deficit == 0) {
      ++consecutive_zero;
    } else {
      consecutive_zero = 0;
      out.deficits.emplace_back(d, deficit);
      out.total += deficit;
    }
  }
  return out;
}

inline long codim_restriction_image(const Arrangement& a, int h) {
  return codim_restriction_sweep(a, h).total;
}

}  // namespace arrfree
