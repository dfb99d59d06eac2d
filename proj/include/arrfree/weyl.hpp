#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrfree/freeness.hpp"

namespace arrfree {

// Crystallographic root systems in their standard integer realizations and
// the deformation families built on them: Weyl, interval truncations
// A(Phi+)^{[p,q]} (extended Shi [1-m,m] and Catalan [-m,m]), and the
// interpolating family A(Phi+, Psi, m).

enum class RootType { A, B, C, D, G };

struct RootSystemDesc {
  RootType type;
  int rank = 0;
  int ambient = 0;
  std::vector<std::vector<Integer>> positive_roots;
  std::vector<int> simple_indices;                // indices into positive_roots
  std::vector<std::vector<long>> simple_coords;   // each root over the simple roots
  std::string name;
};

namespace detail {

inline std::vector<Integer> unit_diff(int n, int i, int j) {  // e_i - e_j
  std::vector<Integer> v(n, Integer(0));
  v[i] = 1;
  v[j] = -1;
  return v;
}

}  // namespace detail

inline RootSystemDesc root_system(RootType type, int rank) {
  RootSystemDesc d;
  d.type = type;
  d.rank = rank;
  auto unit = [](int n, int i, long c) {
    std::vector<Integer> v(n, Integer(0));
    v[i] = c;
    return v;
  };
  switch (type) {
    case RootType::A: {
      if (rank < 1) throw std::invalid_argument("unsupported rank");
      d.ambient = rank + 1;
      d.name = "A" + std::to_string(rank);
      for (int i = 0; i < d.ambient; ++i)
        for (int j = i + 1; j < d.ambient; ++j)
          d.positive_roots.push_back(detail::unit_diff(d.ambient, i, j));
      break;
    }
    case RootType::B:
    case RootType::C: {
      if (rank < 2) throw std::invalid_argument("unsupported rank");
      d.ambient = rank;
      d.name = (type == RootType::B ? "B" : "C") + std::to_string(rank);
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
          d.positive_roots.push_back(detail::unit_diff(rank, i, j));
          auto sum = unit(rank, i, 1);
          sum[j] = 1;
          d.positive_roots.push_back(std::move(sum));
        }
      for (int i = 0; i < rank; ++i)
        d.positive_roots.push_back(unit(rank, i, type == RootType::B ? 1 : 2));
      break;
    }
    case RootType::D: {
      if (rank < 3) throw std::invalid_argument("unsupported rank");
      d.ambient = rank;
      d.name = "D" + std::to_string(rank);
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
          d.positive_roots.push_back(detail::unit_diff(rank, i, j));
          auto sum = unit(rank, i, 1);
          sum[j] = 1;
          d.positive_roots.push_back(std::move(sum));
        }
      break;
    }
    case RootType::G: {
      if (rank != 2) throw std::invalid_argument("unsupported: G only with rank 2");
      d.ambient = 3;
      d.name = "G2";
      const std::vector<std::vector<long>> roots{
          {1, -1, 0}, {-2, 1, 1}, {-1, 0, 1}, {0, -1, 1}, {1, -2, 1}, {-1, -1, 2}};
      for (const auto& r : roots) {
        std::vector<Integer> v;
        for (long x : r) v.push_back(Integer(x));
        d.positive_roots.push_back(std::move(v));
      }
      break;
    }
  }
  // expected number of positive roots per type
  const size_t expected =
      type == RootType::A   ? (size_t)rank * (rank + 1) / 2
      : type == RootType::D ? (size_t)rank * (rank - 1)
      : type == RootType::G ? 6
                            : (size_t)rank * rank;
  if (d.positive_roots.size() != expected)
    throw std::logic_error("positive root count mismatch");

  // simple roots in the standard realizations
  std::vector<std::vector<Integer>> simples;
  if (type == RootType::A)
    for (int i = 0; i < rank; ++i) simples.push_back(detail::unit_diff(rank + 1, i, i + 1));
  if (type == RootType::B || type == RootType::C) {
    for (int i = 0; i + 1 < rank; ++i) simples.push_back(detail::unit_diff(rank, i, i + 1));
    simples.push_back(unit(rank, rank - 1, type == RootType::B ? 1 : 2));
  }
  if (type == RootType::D) {
    for (int i = 0; i + 1 < rank; ++i) simples.push_back(detail::unit_diff(rank, i, i + 1));
    auto last = unit(rank, rank - 2, 1);
    last[rank - 1] = 1;
    simples.push_back(std::move(last));
  }
  if (type == RootType::G) {
    simples.push_back(d.positive_roots[0]);  // e1 - e2
    simples.push_back(d.positive_roots[1]);  // -2e1 + e2 + e3
  }

  for (const auto& s : simples) {
    auto it = std::find(d.positive_roots.begin(), d.positive_roots.end(), s);
    if (it == d.positive_roots.end()) throw std::logic_error("simple root not positive");
    d.simple_indices.push_back((int)(it - d.positive_roots.begin()));
  }

  // coordinates of every positive root over the simple roots; must come out
  // as nonnegative integers
  QMatrix st(d.ambient, rank);
  for (int i = 0; i < d.ambient; ++i)
    for (int j = 0; j < rank; ++j) st.at(i, j) = Rational(simples[j][i]);
  for (const auto& r : d.positive_roots) {
    std::vector<Rational> rhs(d.ambient);
    for (int i = 0; i < d.ambient; ++i) rhs[i] = Rational(r[i]);
    const auto sol = solve_unique(st, rhs);
    if (!sol) throw std::logic_error("positive root outside the simple-root span");
    std::vector<long> coords;
    for (const auto& q : *sol) {
      if (!is_integer(q) || q < 0) throw std::logic_error("root coordinates not nonneg integers");
      coords.push_back(to_long(q.get_num()));
    }
    d.simple_coords.push_back(std::move(coords));
  }
  return d;
}

inline RootSystemDesc root_system(const std::string& name) {
  if (name.size() < 2) throw std::invalid_argument("bad root system name: " + name);
  const char t = name[0];
  const int rank = std::stoi(name.substr(1));
  switch (t) {
    case 'A': return root_system(RootType::A, rank);
    case 'B': return root_system(RootType::B, rank);
    case 'C': return root_system(RootType::C, rank);
    case 'D': return root_system(RootType::D, rank);
    case 'G': return root_system(RootType::G, rank);
    default: throw std::invalid_argument("unsupported root system type: " + name);
  }
}

// beta <= alpha in the root order: alpha - beta is a nonnegative combination
// of simple roots.
inline bool root_leq(const RootSystemDesc& d, int beta, int alpha) {
  for (int j = 0; j < d.rank; ++j)
    if (d.simple_coords[alpha][j] < d.simple_coords[beta][j]) return false;
  return true;
}

inline bool order_ideal_check(const RootSystemDesc& d, const std::vector<int>& ideal) {
  std::set<int> in(ideal.begin(), ideal.end());
  for (int a : ideal) {
    if (a < 0 || a >= (int)d.positive_roots.size())
      throw std::invalid_argument("root index out of range");
    for (int b = 0; b < (int)d.positive_roots.size(); ++b)
      if (root_leq(d, b, a) && !in.count(b)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Exponents and Coxeter number, computed (not tabulated) from the Weyl
// arrangement's characteristic polynomial.
struct ExponentData {
  std::vector<long> exponents;  // ascending, e_1 = 1
  long coxeter = 0;
};

inline Arrangement weyl_arrangement(const RootSystemDesc& d) {
  Arrangement a(d.ambient);
  for (const auto& r : d.positive_roots) {
    Form f(d.ambient);
    for (int i = 0; i < d.ambient; ++i) f[i] = Rational(r[i]);
    a.add_form(std::move(f));
  }
  return a;
}

// Exponents + Coxeter number for an arbitrary set of root vectors (used for
// localization summands); h = 2 #roots / rank.
inline ExponentData exponents_from_roots(const std::vector<std::vector<Integer>>& roots,
                                         int ambient) {
  Arrangement a(ambient);
  for (const auto& r : roots) {
    Form f(ambient);
    for (int i = 0; i < ambient; ++i) f[i] = Rational(r[i]);
    a.add_form(std::move(f));
  }
  const auto ess = essentialize(a);
  const TPoly chi = char_poly(ess.arrangement);
  const auto roots_of_chi = integer_roots(chi);
  if ((long)roots_of_chi.size() != chi.degree())
    throw std::logic_error("Weyl characteristic polynomial must split over Z");
  ExponentData out;
  out.exponents.assign(roots_of_chi.begin(), roots_of_chi.end());
  out.coxeter = 2 * (long)roots.size() / ess.rank;
  for (size_t i = 0; i < out.exponents.size(); ++i) {
    const size_t j = out.exponents.size() - 1 - i;
    if (out.exponents[i] + out.exponents[j] != out.coxeter)
      throw std::logic_error("exponent duality violated");
  }
  return out;
}

inline ExponentData exponent_data(const RootSystemDesc& d) {
  return exponents_from_roots(d.positive_roots, d.ambient);
}

// ---------------------------------------------------------------------------
// Deformation families.
struct FamilySpec {
  enum class Kind { Weyl, Interval, Interpolating };
  RootSystemDesc desc;
  Kind kind = Kind::Weyl;
  long p = 0, q = 0;        // interval bounds for Kind::Interval
  std::vector<int> ideal;   // for Kind::Interpolating
  long m = 0;               // multiplicity parameter

  static FamilySpec weyl(RootSystemDesc d) {
    FamilySpec f;
    f.desc = std::move(d);
    f.kind = Kind::Weyl;
    return f;
  }
  static FamilySpec interval(RootSystemDesc d, long p, long q) {
    if (p > q) throw std::invalid_argument("interval needs p <= q");
    FamilySpec f;
    f.desc = std::move(d);
    f.kind = Kind::Interval;
    f.p = p;
    f.q = q;
    return f;
  }
  static FamilySpec shi(RootSystemDesc d, long m) {
    if (m < 1) throw std::invalid_argument("Shi family needs m >= 1");
    FamilySpec f = interval(std::move(d), 1 - m, m);
    f.m = m;
    return f;
  }
  static FamilySpec catalan(RootSystemDesc d, long m) {
    if (m < 0) throw std::invalid_argument("Catalan family needs m >= 0");
    FamilySpec f = interval(std::move(d), -m, m);
    f.m = m;
    return f;
  }
  static FamilySpec interpolating(RootSystemDesc d, std::vector<int> ideal, long m) {
    if (m < 0) throw std::invalid_argument("interpolating family needs m >= 0");
    FamilySpec f;
    f.desc = std::move(d);
    f.kind = Kind::Interpolating;
    f.ideal = std::move(ideal);
    f.m = m;
    return f;
  }
};

inline AffineArrangement build_family(const FamilySpec& f) {
  const auto& d = f.desc;
  AffineArrangement a(d.ambient);
  auto add = [&](int root, long k) {
    Form form(d.ambient);
    for (int i = 0; i < d.ambient; ++i) form[i] = Rational(d.positive_roots[root][i]);
    a.add_hyperplane(std::move(form), Rational(k));
  };
  switch (f.kind) {
    case FamilySpec::Kind::Weyl:
      for (int r = 0; r < (int)d.positive_roots.size(); ++r) add(r, 0);
      break;
    case FamilySpec::Kind::Interval:
      for (int r = 0; r < (int)d.positive_roots.size(); ++r)
        for (long k = f.p; k <= f.q; ++k) add(r, k);
      break;
    case FamilySpec::Kind::Interpolating: {
      if (!order_ideal_check(d, f.ideal)) throw std::invalid_argument("not an order ideal");
      for (int r = 0; r < (int)d.positive_roots.size(); ++r)
        for (long k = 1 - f.m; k <= f.m; ++k) add(r, k);
      for (int r : f.ideal) add(r, -f.m);
      break;
    }
  }
  return a;
}

// Cone of a family with the bookkeeping needed by localization checks.
struct FamilyCone {
  AffineArrangement affine;
  Arrangement cone;  // essentialized; hyperplane at infinity keeps index 0
  int rank = 0;
  std::vector<int> root_of;  // cone index -> positive root index (-1 at infinity)
};

inline FamilyCone build_family_cone(const FamilySpec& f) {
  FamilyCone out;
  out.affine = build_family(f);
  const Arrangement raw = cone(out.affine);
  const auto ess = essentialize(raw);
  out.cone = ess.arrangement;
  out.rank = ess.rank;
  // cone() appends the affine hyperplanes in order after the infinity plane
  out.root_of.assign(out.cone.size(), -1);
  int idx = 1;
  switch (f.kind) {
    case FamilySpec::Kind::Weyl:
      for (int r = 0; r < (int)f.desc.positive_roots.size(); ++r) out.root_of[idx++] = r;
      break;
    case FamilySpec::Kind::Interval:
      for (int r = 0; r < (int)f.desc.positive_roots.size(); ++r)
        for (long k = f.p; k <= f.q; ++k) out.root_of[idx++] = r;
      break;
    case FamilySpec::Kind::Interpolating:
      for (int r = 0; r < (int)f.desc.positive_roots.size(); ++r)
        for (long k = 1 - f.m; k <= f.m; ++k) out.root_of[idx++] = r;
      for (int r : f.ideal) out.root_of[idx++] = r;
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Predicted cone exponents (ascending): Catalan (1, e_i + mh); Shi
// (1, mh, ..., mh); interpolating (1, e_i' + mh) with e' the exponents of
// A(Psi), zero-padded to the rank and certified free by the library itself.
inline std::vector<long> expected_exponents(const FamilySpec& f) {
  const ExponentData data = exponent_data(f.desc);
  const int l = f.desc.rank;
  std::vector<long> out{1};
  switch (f.kind) {
    case FamilySpec::Kind::Weyl:
      throw std::invalid_argument("expected_exponents applies to the deformation families");
    case FamilySpec::Kind::Interval: {
      if (f.p == -f.q && f.q >= 0) {  // Catalan [-m, m]
        for (long e : data.exponents) out.push_back(e + f.q * data.coxeter);
      } else if (f.p == 1 - f.q && f.q >= 1) {  // Shi [1-m, m]
        for (int i = 0; i < l; ++i) out.push_back(f.q * data.coxeter);
      } else {
        throw std::invalid_argument("no conjectured exponents for this interval");
      }
      break;
    }
    case FamilySpec::Kind::Interpolating: {
      Arrangement sub(f.desc.ambient);
      for (int r : f.ideal) {
        Form form(f.desc.ambient);
        for (int i = 0; i < f.desc.ambient; ++i) form[i] = Rational(f.desc.positive_roots[r][i]);
        sub.add_form(std::move(form));
      }
      std::vector<long> eprime;
      if (sub.size() == 0) {
        eprime.assign(l, 0);
      } else {
        const auto ess = essentialize(sub);
        const FreenessReport rep = decide_free(ess.arrangement);
        if (rep.verdict != Verdict::Free)
          throw std::runtime_error("A(Psi) not certified free");
        eprime = rep.exponents;
        while ((int)eprime.size() < l) eprime.push_back(0);
      }
      for (long e : eprime) out.push_back(e + f.m * data.coxeter);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Machine verification of the Edelman-Reiner predictions for one family:
// the cone must be free with the conjectured exponents, the characteristic
// polynomial must match the predicted factorization, and the restriction to
// the hyperplane at infinity must carry the predicted multiexponents.
struct ERReport {
  bool pass = false;
  bool chi_match = false;
  bool restriction_match = false;
  bool verdict_match = false;
  std::vector<long> expected;
  TPoly chi_affine;
  TPoly chi_expected;
  std::vector<long> restriction_expected;
  FreenessReport freeness;
  std::string family;
};

inline ERReport verify_edelman_reiner(const FamilySpec& f) {
  ERReport rep;
  const ExponentData data = exponent_data(f.desc);
  rep.expected = expected_exponents(f);

  const FamilyCone fc = build_family_cone(f);
  rep.family = f.desc.name;

  // predicted characteristic polynomial of the affine family
  rep.chi_affine = char_poly(fc.affine);
  std::vector<Integer> aff_roots;
  // all expected exponents except one copy of 1 (the cone factor)
  {
    std::vector<long> rest(rep.expected.begin(), rep.expected.end());
    auto it = std::find(rest.begin(), rest.end(), 1);
    if (it != rest.end()) rest.erase(it);
    for (long e : rest) aff_roots.push_back(Integer(e));
    rep.restriction_expected = rest;
    std::sort(rep.restriction_expected.begin(), rep.restriction_expected.end());
  }
  // pad with t^(ambient - rank) for the non-essential directions
  rep.chi_expected = TPoly::from_roots(aff_roots);
  for (int i = 0; i < f.desc.ambient - f.desc.rank; ++i)
    rep.chi_expected = rep.chi_expected * TPoly::t_power(1);
  rep.chi_match = rep.chi_affine == rep.chi_expected;

  // freeness of the cone with the conjecture as hint
  std::vector<long> hint = rep.expected;
  rep.freeness = decide_free(fc.cone, hint);
  rep.verdict_match =
      rep.freeness.verdict == Verdict::Free && rep.freeness.exponents == rep.expected;

  // restriction to the hyperplane at infinity
  const Multiarrangement rest = ziegler_restriction(fc.cone, 0);
  if (fc.rank - 1 == 2) {
    const auto exps = rank2_multiexponents(rest);
    rep.restriction_match =
        std::vector<long>{exps.d1, exps.d2} == rep.restriction_expected;
  } else {
    rep.restriction_match = saito_certificate(rest, rep.restriction_expected).has_value();
  }

  rep.pass = rep.chi_match && rep.restriction_match && rep.verdict_match;
  return rep;
}

// ---------------------------------------------------------------------------
// Structural localization property: every flat inside the hyperplane at
// infinity localizes to the cone of the same-interval family on the roots
// vanishing there, and each matroid component of that root set satisfies the
// conjectured exponent pattern for its own exponents and Coxeter number.
struct LocalizationCheck {
  long flats_checked = 0;
  long components_verified = 0;
  bool pass = true;
  std::string note;
};

inline LocalizationCheck verify_family_localizations(const FamilySpec& f) {
  if (f.kind != FamilySpec::Kind::Interval)
    throw std::invalid_argument("localization check applies to interval families");
  LocalizationCheck out;
  const FamilyCone fc = build_family_cone(f);
  const IntersectionLattice lat = build_lattice(fc.cone);
  const bool catalan = f.p == -f.q;

  for (const Flat& x : lat.flats) {
    if (!((x.index_set >> 0) & 1) || x.dim < 1 || x.dim >= fc.rank) continue;
    ++out.flats_checked;
    // roots vanishing on the flat
    std::set<int> root_set;
    for (int i = 0; i < fc.cone.size(); ++i)
      if ((x.index_set >> i) & 1 && fc.root_of[i] >= 0) root_set.insert(fc.root_of[i]);
    std::vector<std::vector<Integer>> roots;
    for (int r : root_set) roots.push_back(f.desc.positive_roots[r]);

    // the localization must be exactly the cone of the sub-family
    AffineArrangement sub(f.desc.ambient);
    for (const auto& r : roots) {
      Form form(f.desc.ambient);
      for (int i = 0; i < f.desc.ambient; ++i) form[i] = Rational(r[i]);
      for (long k = f.p; k <= f.q; ++k) sub.add_hyperplane(form, Rational(k));
    }
    const Arrangement loc = essentialize(localize(fc.cone, x)).arrangement;
    const Arrangement sub_cone = essentialize(cone(sub)).arrangement;
    if (loc.size() != sub_cone.size() || !(char_poly(loc) == char_poly(sub_cone))) {
      out.pass = false;
      out.note = "localization differs from the sub-family cone";
      return out;
    }

    if (roots.empty()) continue;
    // each matroid component is a lower-rank root system whose coned family
    // must satisfy the conjectured exponents
    Arrangement root_arr(f.desc.ambient);
    for (const auto& r : roots) {
      Form form(f.desc.ambient);
      for (int i = 0; i < f.desc.ambient; ++i) form[i] = Rational(r[i]);
      root_arr.add_form(std::move(form));
    }
    const auto root_ess = essentialize(root_arr);
    for (const auto& group : decompose_indices(root_ess.arrangement)) {
      std::vector<std::vector<Integer>> comp;
      for (int g : group) comp.push_back(roots[g]);
      const ExponentData comp_data = exponents_from_roots(comp, f.desc.ambient);
      const long m = f.q;
      std::vector<long> expect{1};
      for (long e : comp_data.exponents)
        expect.push_back(catalan ? e + m * comp_data.coxeter : m * comp_data.coxeter);
      std::sort(expect.begin(), expect.end());

      AffineArrangement comp_aff(f.desc.ambient);
      for (const auto& r : comp) {
        Form form(f.desc.ambient);
        for (int i = 0; i < f.desc.ambient; ++i) form[i] = Rational(r[i]);
        for (long k = f.p; k <= f.q; ++k) comp_aff.add_hyperplane(form, Rational(k));
      }
      const auto comp_cone = essentialize(cone(comp_aff)).arrangement;
      const FreenessReport rep = decide_free(comp_cone, expect);
      if (rep.verdict != Verdict::Free || rep.exponents != expect) {
        out.pass = false;
        out.note = "component family failed its conjectured exponents";
        return out;
      }
      ++out.components_verified;
    }
  }
  return out;
}

}  // namespace arrfree
