#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrfree/matrix.hpp"
#include "arrfree/numeric.hpp"

namespace arrfree {

using Form = std::vector<Rational>;  // coefficient vector of a linear form

// Scales a nonzero form so its first nonzero coordinate is 1; this is the
// canonical representative of the hyperplane it defines.
inline Form normalize_form(Form f) {
  for (const auto& x : f) {
    if (x != 0) {
      const Rational lead = x;
      for (auto& y : f) y /= lead;
      return f;
    }
  }
  throw std::invalid_argument("hyperplane form is the zero vector");
}

// Central arrangement: distinct linear hyperplanes through the origin.
struct Arrangement {
  int dim = 0;
  std::vector<Form> forms;  // normalized, pairwise distinct
  int infinity = -1;        // index of the hyperplane at infinity after coning

  Arrangement() = default;
  explicit Arrangement(int d) : dim(d) {}

  int size() const { return (int)forms.size(); }

  void add_form(Form f) {
    if ((int)f.size() != dim) throw std::invalid_argument("form has wrong length");
    Form n = normalize_form(std::move(f));
    for (const auto& g : forms)
      if (g == n) throw std::invalid_argument("duplicate hyperplane");
    forms.push_back(std::move(n));
  }

  std::vector<Integer> primitive_form(int i) const {
    return primitive_integer_vector(forms[i]);
  }

  // Canonical key: sorted normalized forms; equal keys iff same hyperplane set.
  std::string canonical_key() const {
    std::vector<std::string> rows;
    for (const auto& f : forms) {
      std::string s;
      for (const auto& x : f) s += to_string(x) + " ";
      rows.push_back(s);
    }
    std::sort(rows.begin(), rows.end());
    std::string key = "dim " + std::to_string(dim) + ";";
    for (const auto& r : rows) key += r + ";";
    return key;
  }
};

// Arrangement with a nonnegative multiplicity per hyperplane.
struct Multiarrangement {
  Arrangement base;
  std::vector<long> mult;

  Multiarrangement() = default;
  explicit Multiarrangement(Arrangement a)
      : base(std::move(a)), mult(base.forms.size(), 1) {}
  Multiarrangement(Arrangement a, std::vector<long> m)
      : base(std::move(a)), mult(std::move(m)) {
    if (mult.size() != base.forms.size())
      throw std::invalid_argument("multiplicity list length mismatch");
    for (long k : mult)
      if (k < 0) throw std::invalid_argument("negative multiplicity");
  }

  long total_multiplicity() const {
    return std::accumulate(mult.begin(), mult.end(), 0L);
  }
};

// Affine arrangement: hyperplanes {v : form(v) = offset}.
struct AffineArrangement {
  int dim = 0;
  std::vector<Form> forms;
  std::vector<Rational> offsets;

  AffineArrangement() = default;
  explicit AffineArrangement(int d) : dim(d) {}

  int size() const { return (int)forms.size(); }

  void add_hyperplane(Form f, Rational offset) {
    if ((int)f.size() != dim) throw std::invalid_argument("form has wrong length");
    // canonical pair: scale so the form's first nonzero coordinate is 1
    Rational lead(0);
    for (const auto& x : f)
      if (x != 0) {
        lead = x;
        break;
      }
    if (lead == 0) throw std::invalid_argument("hyperplane form is the zero vector");
    for (auto& x : f) x /= lead;
    offset /= lead;
    for (int i = 0; i < size(); ++i)
      if (forms[i] == f && offsets[i] == offset)
        throw std::invalid_argument("duplicate affine hyperplane");
    forms.push_back(std::move(f));
    offsets.push_back(std::move(offset));
  }
};

// A flat of the intersection lattice: canonical data for a subspace X that
// arises as an intersection of hyperplanes.
struct Flat {
  QMatrix normals;     // RREF basis of the forms vanishing on X
  QMatrix basis;       // RREF basis of X itself
  int dim = 0;         // dim X
  uint64_t index_set = 0;  // bit h set iff hyperplane h contains X

  std::string canonical_key() const {
    std::string s = std::to_string(dim) + ":";
    for (long i = 0; i < normals.rows; ++i)
      for (long j = 0; j < normals.cols; ++j) s += to_string(normals.at(i, j)) + ",";
    return s;
  }
};

inline bool flat_contains(const Flat& outer, const Flat& inner) {
  // reverse-inclusion order helper: outer >= inner as subspaces
  return (outer.index_set & inner.index_set) == outer.index_set;
}

// Builds the canonical Flat from a set of spanning normal rows.
inline Flat make_flat(const Arrangement& a, const QMatrix& normal_rows) {
  Flat x;
  x.normals = rref(normal_rows);
  x.dim = a.dim - (int)x.normals.rows;
  const auto kern = kernel_basis(x.normals);
  QMatrix b((long)kern.size(), a.dim);
  for (size_t i = 0; i < kern.size(); ++i)
    for (int j = 0; j < a.dim; ++j) b.at(i, j) = kern[i][j];
  x.basis = rref(b);
  if (a.size() > 64) throw std::invalid_argument("more than 64 hyperplanes");
  for (int h = 0; h < a.size(); ++h)
    if (in_row_space(x.normals, a.forms[h])) x.index_set |= (uint64_t)1 << h;
  return x;
}

inline Flat ambient_flat(const Arrangement& a) {
  return make_flat(a, QMatrix(0, a.dim));
}

inline Flat hyperplane_flat(const Arrangement& a, int h) {
  QMatrix m(1, a.dim);
  for (int j = 0; j < a.dim; ++j) m.at(0, j) = a.forms[h][j];
  return make_flat(a, m);
}

// ---------------------------------------------------------------------------
// cone: homogenize an affine arrangement by a new first coordinate x_0 and
// add the hyperplane at infinity {x_0 = 0}. The infinity hyperplane sits at
// index 0 and is recorded in Arrangement::infinity.
inline Arrangement cone(const AffineArrangement& a) {
  Arrangement c(a.dim + 1);
  Form inf(a.dim + 1, Rational(0));
  inf[0] = 1;
  c.add_form(std::move(inf));
  c.infinity = 0;
  for (int i = 0; i < a.size(); ++i) {
    Form f(a.dim + 1, Rational(0));
    f[0] = -a.offsets[i];
    for (int j = 0; j < a.dim; ++j) f[j + 1] = a.forms[i][j];
    c.add_form(std::move(f));  // duplicates impossible by the affine invariants
  }
  return c;
}

// ---------------------------------------------------------------------------
// localize: the subarrangement of hyperplanes containing the flat X.
inline std::vector<int> localize_indices(const Arrangement& a, const Flat& x) {
  std::vector<int> idx;
  for (int h = 0; h < a.size(); ++h) {
    bool contains = true;
    for (long r = 0; r < x.basis.rows && contains; ++r) {
      Rational dot(0);
      for (int j = 0; j < a.dim; ++j) dot += a.forms[h][j] * x.basis.at(r, j);
      contains = dot == 0;
    }
    if (contains) idx.push_back(h);
  }
  // X must actually be the intersection of the hyperplanes containing it.
  QMatrix m((long)idx.size(), a.dim);
  for (size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < a.dim; ++j) m.at(i, j) = a.forms[idx[i]][j];
  if (rank(m) != a.dim - x.dim)
    throw std::invalid_argument("flat is not an intersection of hyperplanes");
  return idx;
}

inline Arrangement localize(const Arrangement& a, const Flat& x) {
  Arrangement out(a.dim);
  for (int h : localize_indices(a, x)) out.add_form(a.forms[h]);
  return out;
}

inline Multiarrangement localize(const Multiarrangement& m, const Flat& x) {
  Arrangement out(m.base.dim);
  std::vector<long> mult;
  for (int h : localize_indices(m.base, x)) {
    out.add_form(m.base.forms[h]);
    mult.push_back(m.mult[h]);
  }
  return Multiarrangement(std::move(out), std::move(mult));
}

// ---------------------------------------------------------------------------
// Adapted coordinates for a hyperplane h: an invertible integer change of
// variables w = T z whose first coordinate is (a scalar multiple of) alpha_h.
// Forms transform by the inverse transpose, scaled integral.
struct AdaptedCoords {
  std::vector<std::vector<Integer>> T;         // w = T z
  std::vector<std::vector<Integer>> form_map;  // beta |-> form_map * beta, = det(T) T^{-T}
};

inline AdaptedCoords adapted_coords(const Arrangement& a, int h) {
  const int l = a.dim;
  const std::vector<Integer> alpha = a.primitive_form(h);
  int pivot = -1;
  for (int j = 0; j < l; ++j)
    if (alpha[j] != 0) {
      pivot = j;
      break;
    }
  AdaptedCoords ac;
  ac.T.assign(l, std::vector<Integer>(l, Integer(0)));
  for (int j = 0; j < l; ++j) ac.T[0][j] = alpha[j];
  int r = 1;
  for (int j = 0; j < l; ++j)
    if (j != pivot) ac.T[r++][j] = 1;

  // inverse transpose via rational inversion, then cleared to integers
  QMatrix aug(l, 2 * l);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) aug.at(i, j) = Rational(ac.T[i][j]);
    aug.at(i, l + i) = 1;
  }
  const QMatrix red = rref(aug);
  if (red.rows != l) throw std::logic_error("adapted transform not invertible");
  ac.form_map.assign(l, std::vector<Integer>(l));
  // form_map = det * (T^{-1})^T; row i of T^{-T} is column i of T^{-1}
  Integer den = 1;
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) den = lcm(den, red.at(i, l + j).get_den());
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      const Rational q = red.at(j, l + i);  // (T^{-1})_{j,i} = (T^{-T})_{i,j}
      ac.form_map[i][j] = q.get_num() * (den / q.get_den());
    }
  return ac;
}

inline std::vector<Integer> apply_form_map(const AdaptedCoords& ac,
                                           const std::vector<Integer>& beta) {
  const int l = (int)beta.size();
  std::vector<Integer> out(l, Integer(0));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) out[i] += ac.form_map[i][j] * beta[j];
  make_primitive(out);
  return out;
}

// ---------------------------------------------------------------------------
// Ziegler restriction: the multiarrangement on H_h whose multiplicity counts
// the hyperplanes of a meeting H_h in each trace. Coordinates on H_h are the
// adapted coordinates w_2..w_l.
struct RestrictionContext {
  AdaptedCoords coords;
  Multiarrangement restricted;
  std::vector<int> trace_of;  // hyperplane index -> index in restricted (h itself: -1)
};

inline RestrictionContext ziegler_restriction_context(const Arrangement& a, int h) {
  if (h < 0 || h >= a.size()) throw std::invalid_argument("hyperplane index out of range");
  RestrictionContext ctx;
  ctx.coords = adapted_coords(a, h);
  Arrangement base(a.dim - 1);
  std::vector<long> mult;
  ctx.trace_of.assign(a.size(), -1);
  for (int i = 0; i < a.size(); ++i) {
    if (i == h) continue;
    std::vector<Integer> w = apply_form_map(ctx.coords, a.primitive_form(i));
    std::vector<Integer> trace(w.begin() + 1, w.end());
    make_primitive(trace);
    Form f(trace.size());
    for (size_t j = 0; j < trace.size(); ++j) f[j] = Rational(trace[j]);
    f = normalize_form(std::move(f));
    int found = -1;
    for (int k = 0; k < base.size(); ++k)
      if (base.forms[k] == f) {
        found = k;
        break;
      }
    if (found >= 0) {
      ++mult[found];
    } else {
      base.forms.push_back(std::move(f));
      mult.push_back(1);
      found = base.size() - 1;
    }
    ctx.trace_of[i] = found;
  }
  ctx.restricted = Multiarrangement(std::move(base), std::move(mult));
  return ctx;
}

inline Multiarrangement ziegler_restriction(const Arrangement& a, int h) {
  return ziegler_restriction_context(a, h).restricted;
}

// ---------------------------------------------------------------------------
// essentialize: quotient by the common intersection of all hyperplanes, so
// the result has full rank. Form i of the output is the coordinate vector of
// form i in the RREF basis of the span of the normals.
template <typename T>
struct Essentialized {
  T arrangement;
  int rank = 0;
};

inline QMatrix normal_matrix(const Arrangement& a) {
  QMatrix m(a.size(), a.dim);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.dim; ++j) m.at(i, j) = a.forms[i][j];
  return m;
}

inline Essentialized<Arrangement> essentialize(const Arrangement& a) {
  const QMatrix basis = rref(normal_matrix(a));
  const int r = (int)basis.rows;
  Essentialized<Arrangement> out;
  out.rank = r;
  out.arrangement = Arrangement(r);
  out.arrangement.infinity = a.infinity;
  for (int i = 0; i < a.size(); ++i) {
    const auto coords = in_row_space(basis, a.forms[i]);
    if (!coords) throw std::logic_error("form outside its own span");
    out.arrangement.add_form(*coords);
  }
  return out;
}

inline Essentialized<Multiarrangement> essentialize(const Multiarrangement& m) {
  auto base = essentialize(m.base);
  Essentialized<Multiarrangement> out;
  out.rank = base.rank;
  out.arrangement = Multiarrangement(std::move(base.arrangement), m.mult);
  return out;
}

inline int arrangement_rank(const Arrangement& a) { return (int)rank(normal_matrix(a)); }

inline bool is_essential(const Arrangement& a) { return arrangement_rank(a) == a.dim; }

// ---------------------------------------------------------------------------
// decompose: finest splitting of an essential arrangement into subsets whose
// normals span independent subspaces. Two normals belong together iff they
// lie in a common circuit of the linear matroid; the components are the
// connected components of co-membership in fundamental circuits with respect
// to one fixed basis.
inline std::vector<std::vector<int>> decompose_indices(const Arrangement& a) {
  if (!is_essential(a)) throw std::invalid_argument("decompose requires an essential arrangement");
  const int n = a.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  std::vector<int> basis_members;
  QMatrix basis_rows(0, a.dim);
  for (int i = 0; i < n; ++i) {
    QMatrix cand(basis_rows.rows + 1, a.dim);
    for (long r = 0; r < basis_rows.rows; ++r)
      for (int j = 0; j < a.dim; ++j) cand.at(r, j) = basis_rows.at(r, j);
    for (int j = 0; j < a.dim; ++j) cand.at(basis_rows.rows, j) = a.forms[i][j];
    if (rank(cand) == basis_rows.rows + 1) {
      basis_rows = std::move(cand);
      basis_members.push_back(i);
    } else {
      // fundamental circuit: the unique expression of form i in the basis
      QMatrix bt(a.dim, (long)basis_members.size());
      for (size_t r = 0; r < basis_members.size(); ++r)
        for (int j = 0; j < a.dim; ++j) bt.at(j, r) = a.forms[basis_members[r]][j];
      const auto coords = solve_unique(bt, a.forms[i]);
      if (!coords) throw std::logic_error("dependent form not in basis span");
      for (size_t b = 0; b < basis_members.size(); ++b)
        if ((*coords)[b] != 0) unite(i, basis_members[b]);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Arrangement> decompose(const Arrangement& a) {
  std::vector<Arrangement> out;
  for (const auto& group : decompose_indices(a)) {
    Arrangement piece(a.dim);
    for (int i : group) piece.add_form(a.forms[i]);
    out.push_back(std::move(piece));
  }
  return out;
}

}  // namespace arrfree
