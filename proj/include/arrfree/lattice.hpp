#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrfree/arrangement.hpp"
#include "arrfree/upoly.hpp"

namespace arrfree {

// Intersection lattice: every intersection of hyperplanes exactly once,
// ordered by reverse inclusion, with Mobius values from the defining
// recursion. Flats are sorted by codimension, then by canonical key, so the
// layout is deterministic.
struct IntersectionLattice {
  int dim = 0;
  std::vector<Flat> flats;      // flats[0] is the ambient space
  std::vector<Integer> mobius;  // aligned with flats

  long num_flats() const { return (long)flats.size(); }
};

inline IntersectionLattice build_lattice(const Arrangement& a) {
  IntersectionLattice lat;
  lat.dim = a.dim;
  std::map<std::string, int> seen;

  std::vector<Flat> level{ambient_flat(a)};
  seen.emplace(level[0].canonical_key(), 0);
  lat.flats.push_back(level[0]);

  while (!level.empty()) {
    // sort current level members already canonical; build next level
    std::map<std::string, Flat> next;
    for (const Flat& x : level) {
      for (int h = 0; h < a.size(); ++h) {
        if (x.index_set & ((uint64_t)1 << h)) continue;
        QMatrix rows(x.normals.rows + 1, a.dim);
        for (long r = 0; r < x.normals.rows; ++r)
          for (int j = 0; j < a.dim; ++j) rows.at(r, j) = x.normals.at(r, j);
        for (int j = 0; j < a.dim; ++j) rows.at(x.normals.rows, j) = a.forms[h][j];
        Flat y = make_flat(a, rows);
        if (y.dim != x.dim - 1) throw std::logic_error("lattice step must drop dim by 1");
        next.emplace(y.canonical_key(), std::move(y));
      }
    }
    level.clear();
    for (auto& [key, f] : next) {
      if (seen.emplace(key, (int)lat.flats.size()).second) {
        lat.flats.push_back(f);
        level.push_back(std::move(f));
      }
    }
  }

  std::stable_sort(lat.flats.begin(), lat.flats.end(),
                   [](const Flat& x, const Flat& y) {
                     if (x.dim != y.dim) return x.dim > y.dim;
                     return x.canonical_key() < y.canonical_key();
                   });

  lat.mobius.assign(lat.flats.size(), Integer(0));
  lat.mobius[0] = 1;
  for (size_t i = 1; i < lat.flats.size(); ++i) {
    Integer s = 0;
    for (size_t j = 0; j < i; ++j) {
      const uint64_t a_ = lat.flats[j].index_set, b_ = lat.flats[i].index_set;
      if ((a_ & b_) == a_ && a_ != b_) s += lat.mobius[j];
    }
    lat.mobius[i] = -s;
  }
  return lat;
}

inline TPoly char_poly(const IntersectionLattice& lat) {
  TPoly chi;
  for (size_t i = 0; i < lat.flats.size(); ++i)
    chi = chi + TPoly::t_power(lat.flats[i].dim, lat.mobius[i]);
  return chi;
}

inline TPoly char_poly(const Arrangement& a) { return char_poly(build_lattice(a)); }

// chi / (t - 1); exact for every nonempty central arrangement.
inline TPoly reduced_char_poly(const Arrangement& a) {
  if (a.size() == 0) throw std::invalid_argument("reduced_char_poly of empty arrangement");
  auto q = char_poly(a).divide_exact(TPoly::linear_root(Integer(1)));
  if (!q) throw std::logic_error("characteristic polynomial not divisible by t-1");
  return *q;
}

// chi of the affine arrangement, read off from its cone.
inline TPoly char_poly(const AffineArrangement& a) {
  if (a.size() == 0) return TPoly::t_power(a.dim);
  return reduced_char_poly(cone(a));
}

namespace detail {

inline long rank_mod_small(const std::vector<std::vector<Integer>>& rows, uint64_t p) {
  if (rows.empty()) return 0;
  const size_t cols = rows[0].size();
  std::vector<std::vector<uint64_t>> w(rows.size(), std::vector<uint64_t>(cols));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j)
      w[i][j] = mpz_fdiv_ui(rows[i][j].get_mpz_t(), (unsigned long)p);
  long r = 0;
  for (size_t c = 0; c < cols && r < (long)rows.size(); ++c) {
    long piv = -1;
    for (long i = r; i < (long)rows.size(); ++i)
      if (w[i][c] % p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(w[r], w[piv]);
    // eliminate below without inverses: cross-multiply
    for (long i = r + 1; i < (long)rows.size(); ++i) {
      if (w[i][c] % p == 0) continue;
      const uint64_t f = w[i][c] % p, g = w[r][c] % p;
      for (size_t j = c; j < cols; ++j)
        w[i][j] = (w[i][j] % p * g % p + (p - w[r][j] % p) * f % p) % p;
    }
    ++r;
  }
  return r;
}

}  // namespace detail

// A prime is good for the counting oracle when the linear matroid of the
// normals is unchanged mod p; then the intersection lattice (with all its
// dimensions) reduces isomorphically and the complement count equals chi(p).
// It suffices that every maximal independent subset of the normals stays
// independent mod p: any independent set extends to one, so no minor that
// defines the lattice can vanish. Enumeration prunes dependent prefixes.
inline bool is_good_prime(const Arrangement& a, const IntersectionLattice& lat, long p) {
  (void)lat;
  if (p < 2 || mpz_probab_prime_p(Integer(p).get_mpz_t(), 40) == 0) return false;
  std::vector<std::vector<Integer>> prim;
  for (int i = 0; i < a.size(); ++i) prim.push_back(a.primitive_form(i));
  const long r = rank(normal_matrix(a));

  std::vector<int> chosen;
  std::function<bool(int)> dfs = [&](int start) -> bool {
    if ((long)chosen.size() == r) return true;  // full subset checked on the way down
    for (int i = start; i < a.size(); ++i) {
      chosen.push_back(i);
      std::vector<std::vector<Integer>> rows;
      for (int c : chosen) rows.push_back(prim[c]);
      ZMatrix m((long)rows.size(), a.dim);
      for (size_t ri = 0; ri < rows.size(); ++ri)
        for (int j = 0; j < a.dim; ++j) m.at(ri, j) = rows[ri][j];
      if (rank_exact(m) == (long)chosen.size()) {  // independent over Q
        if (detail::rank_mod_small(rows, p) != (long)chosen.size()) {
          chosen.pop_back();
          return false;  // an independent set degenerates mod p
        }
        if (!dfs(i + 1)) {
          chosen.pop_back();
          return false;
        }
      }
      chosen.pop_back();
    }
    return true;
  };
  return dfs(0);
}

// Counts points of F_p^dim avoiding every hyperplane; equals chi(A, p) for
// good primes. The independent oracle behind the characteristic polynomial.
inline Integer count_points_mod_p(const Arrangement& a, long p,
                                  const IntersectionLattice* lat_hint = nullptr) {
  IntersectionLattice local;
  const IntersectionLattice* lat = lat_hint;
  if (!lat) {
    local = build_lattice(a);
    lat = &local;
  }
  if (!is_good_prime(a, *lat, p)) throw std::runtime_error("bad prime");

  const int l = a.dim;
  const int n = a.size();
  double total = 1;
  for (int i = 0; i < l; ++i) total *= (double)p;
  if (total > 4.2e8) throw std::invalid_argument("point count grid too large");

  std::vector<std::vector<uint32_t>> f(n, std::vector<uint32_t>(l));
  for (int h = 0; h < n; ++h) {
    const auto prim = a.primitive_form(h);
    for (int j = 0; j < l; ++j) f[h][j] = (uint32_t)mpz_fdiv_ui(prim[j].get_mpz_t(), p);
  }

  std::vector<uint32_t> coord(l, 0);
  std::vector<uint32_t> val(n, 0);  // current form values
  long long count = 0;
  const long long npoints = (long long)total;
  for (long long step = 0;;) {
    bool nonzero = true;
    for (int h = 0; h < n; ++h)
      if (val[h] == 0) {
        nonzero = false;
        break;
      }
    count += nonzero;
    if (++step == npoints) break;
    // odometer increment, updating form values incrementally
    for (int j = l - 1; j >= 0; --j) {
      if (++coord[j] < (uint32_t)p) {
        for (int h = 0; h < n; ++h) {
          val[h] += f[h][j];
          if (val[h] >= (uint32_t)p) val[h] -= (uint32_t)p;
        }
        break;
      }
      coord[j] = 0;
      for (int h = 0; h < n; ++h) {
        // subtract (p-1) * f[h][j]  ==  add f[h][j]
        val[h] += f[h][j];
        if (val[h] >= (uint32_t)p) val[h] -= (uint32_t)p;
      }
    }
  }
  return Integer((long)count);
}

inline std::vector<long> good_primes(const Arrangement& a, int how_many, long start) {
  const IntersectionLattice lat = build_lattice(a);
  std::vector<long> out;
  for (long p = start; (int)out.size() < how_many && p < start + 100000; ++p)
    if (is_good_prime(a, lat, p)) out.push_back(p);
  if ((int)out.size() < how_many) throw std::runtime_error("could not find enough good primes");
  return out;
}

}  // namespace arrfree
