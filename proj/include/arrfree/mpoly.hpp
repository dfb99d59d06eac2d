#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrfree/numeric.hpp"

namespace arrfree {

using Exponents = std::vector<int>;

// Graded lexicographic order; fixes the canonical term order for printing.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

// Sparse multivariate polynomial over Q. Zero coefficients are never stored;
// all exponent vectors have length nvars.
struct MPoly {
  int nvars = 0;
  std::map<Exponents, Rational, GrlexLess> terms;

  MPoly() = default;
  explicit MPoly(int nv) : nvars(nv) {}

  static MPoly constant(int nv, const Rational& c) {
    MPoly p(nv);
    if (c != 0) p.terms.emplace(Exponents(nv, 0), c);
    return p;
  }
  static MPoly variable(int nv, int i, const Rational& c = Rational(1)) {
    MPoly p(nv);
    if (c != 0) {
      Exponents e(nv, 0);
      e[i] = 1;
      p.terms.emplace(std::move(e), c);
    }
    return p;
  }
  static MPoly monomial(int nv, Exponents e, const Rational& c) {
    MPoly p(nv);
    if (c != 0) p.terms.emplace(std::move(e), c);
    return p;
  }
  static MPoly linear_form(const std::vector<Rational>& coeffs) {
    MPoly p((int)coeffs.size());
    for (int i = 0; i < p.nvars; ++i)
      if (coeffs[i] != 0) {
        Exponents e(p.nvars, 0);
        e[i] = 1;
        p.terms.emplace(std::move(e), coeffs[i]);
      }
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  long total_degree() const {  // -1 for the zero polynomial
    long d = -1;
    for (const auto& [e, c] : terms)
      d = std::max(d, (long)std::accumulate(e.begin(), e.end(), 0));
    return d;
  }

  bool is_homogeneous() const {
    long d = -2;
    for (const auto& [e, c] : terms) {
      const long de = std::accumulate(e.begin(), e.end(), 0);
      if (d == -2) d = de;
      else if (d != de) return false;
    }
    return true;
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto it = terms.find(e);
    if (it == terms.end()) terms.emplace(e, c);
    else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  friend MPoly operator+(const MPoly& x, const MPoly& y) {
    MPoly r = x;
    for (const auto& [e, c] : y.terms) r.add_term(e, c);
    return r;
  }
  friend MPoly operator-(const MPoly& x, const MPoly& y) {
    MPoly r = x;
    for (const auto& [e, c] : y.terms) r.add_term(e, -c);
    return r;
  }
  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
  }
  friend MPoly operator*(const MPoly& x, const MPoly& y) {
    MPoly r(std::max(x.nvars, y.nvars));
    for (const auto& [e1, c1] : x.terms)
      for (const auto& [e2, c2] : y.terms) {
        Exponents e(r.nvars, 0);
        for (int i = 0; i < (int)e1.size(); ++i) e[i] += e1[i];
        for (int i = 0; i < (int)e2.size(); ++i) e[i] += e2[i];
        r.add_term(e, c1 * c2);
      }
    return r;
  }
  friend MPoly operator*(const Rational& s, const MPoly& y) {
    MPoly r(y.nvars);
    if (s == 0) return r;
    r = y;
    for (auto& [e, c] : r.terms) c *= s;
    return r;
  }
  friend bool operator==(const MPoly& x, const MPoly& y) { return x.terms == y.terms; }

  // Linear change of variables z_i = sum_j sub[i][j] * w_j.
  MPoly substitute_linear(const std::vector<std::vector<Rational>>& sub) const {
    const int nw = sub.empty() ? 0 : (int)sub[0].size();
    MPoly out(nw);
    for (const auto& [e, c] : terms) {
      MPoly term = MPoly::constant(nw, c);
      for (int i = 0; i < nvars; ++i)
        for (int k = 0; k < e[i]; ++k) term = term * MPoly::linear_form(sub[i]);
      out = out + term;
    }
    return out;
  }

  // Substitute z_i = 0.
  MPoly set_var_zero(int i) const {
    MPoly out(nvars);
    for (const auto& [e, c] : terms)
      if (e[i] == 0) out.terms.emplace(e, c);
    return out;
  }

  // Exact quotient by a single variable power z_i^k; nullopt when not divisible.
  std::optional<MPoly> divide_var_power(int i, int k) const {
    MPoly out(nvars);
    for (const auto& [e, c] : terms) {
      if (e[i] < k) return std::nullopt;
      Exponents f = e;
      f[i] -= k;
      out.terms.emplace(std::move(f), c);
    }
    return out;
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? Rational(0) : it->second;
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    Rational v(0);
    for (const auto& [e, c] : terms) {
      Rational t = c;
      for (int i = 0; i < nvars; ++i)
        for (int k = 0; k < e[i]; ++k) t *= point[i];
      v += t;
    }
    return v;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (terms.empty()) return "0";
    auto var_name = [&](int i) {
      return i < (int)names.size() ? names[i] : "z" + std::to_string(i + 1);
    };
    std::string s;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      const auto& [e, c] = *it;
      if (!s.empty()) s += c > 0 ? " + " : " - ";
      else if (c < 0) s += "-";
      Rational a = abs(c);
      std::string mono;
      for (int i = 0; i < nvars; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += var_name(i);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) s += to_string(a);
      else {
        if (a != 1) s += to_string(a) + "*";
        s += mono;
      }
    }
    return s;
  }
};

// Determinant by Laplace expansion; the matrices here are at most 5x5.
inline MPoly determinant(const std::vector<std::vector<MPoly>>& m) {
  const int n = (int)m.size();
  if (n == 0) return MPoly::constant(0, Rational(1));
  if (n == 1) return m[0][0];
  MPoly det(m[0][0].nvars);
  for (int j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<MPoly>> minor;
    minor.reserve(n - 1);
    for (int i = 1; i < n; ++i) {
      std::vector<MPoly> row;
      row.reserve(n - 1);
      for (int k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    const MPoly sub = determinant(minor);
    const MPoly term = m[0][j] * sub;
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace arrfree
