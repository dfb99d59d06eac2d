#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrfree/numeric.hpp"

namespace arrfree {

// Univariate integer polynomial in t, dense coefficients low-to-high.
// Houses characteristic polynomials and their reduced forms.
struct TPoly {
  std::vector<Integer> c;

  TPoly() = default;
  explicit TPoly(Integer constant) {
    if (constant != 0) c.push_back(std::move(constant));
  }
  explicit TPoly(long constant) : TPoly(Integer(constant)) {}
  explicit TPoly(std::vector<Integer> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  long degree() const { return (long)c.size() - 1; }  // -1 for the zero poly
  const Integer& leading() const { return c.back(); }
  Integer coeff(long i) const { return (i >= 0 && i < (long)c.size()) ? c[i] : Integer(0); }

  static TPoly t_power(long e, Integer coeff = Integer(1)) {
    TPoly p;
    if (coeff == 0) return p;
    p.c.assign(e + 1, Integer(0));
    p.c[e] = std::move(coeff);
    return p;
  }
  // t - r
  static TPoly linear_root(const Integer& r) { return TPoly(std::vector<Integer>{-r, 1}); }

  static TPoly from_roots(const std::vector<Integer>& roots) {
    TPoly p(1);
    for (const auto& r : roots) p = p * linear_root(r);
    return p;
  }

  friend TPoly operator+(const TPoly& x, const TPoly& y) {
    TPoly r;
    r.c.resize(std::max(x.c.size(), y.c.size()), Integer(0));
    for (size_t i = 0; i < x.c.size(); ++i) r.c[i] += x.c[i];
    for (size_t i = 0; i < y.c.size(); ++i) r.c[i] += y.c[i];
    r.trim();
    return r;
  }
  friend TPoly operator-(const TPoly& x, const TPoly& y) {
    TPoly r;
    r.c.resize(std::max(x.c.size(), y.c.size()), Integer(0));
    for (size_t i = 0; i < x.c.size(); ++i) r.c[i] += x.c[i];
    for (size_t i = 0; i < y.c.size(); ++i) r.c[i] -= y.c[i];
    r.trim();
    return r;
  }
  TPoly operator-() const {
    TPoly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend TPoly operator*(const TPoly& x, const TPoly& y) {
    if (x.is_zero() || y.is_zero()) return TPoly();
    TPoly r;
    r.c.assign(x.c.size() + y.c.size() - 1, Integer(0));
    for (size_t i = 0; i < x.c.size(); ++i)
      for (size_t j = 0; j < y.c.size(); ++j) r.c[i + j] += x.c[i] * y.c[j];
    r.trim();
    return r;
  }
  friend TPoly operator*(const Integer& s, const TPoly& y) { return TPoly(s) * y; }
  friend bool operator==(const TPoly& x, const TPoly& y) { return x.c == y.c; }

  Integer eval(const Integer& t) const {
    Integer v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
    return v;
  }

  // p(t + shift), by Horner over Z[t]
  TPoly compose_shift(const Integer& shift) const {
    TPoly v;
    const TPoly lin(std::vector<Integer>{shift, 1});
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * lin + TPoly(*it);
    return v;
  }

  // Quotient when the division is exact, nullopt otherwise.
  std::optional<TPoly> divide_exact(const TPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (is_zero()) return TPoly();
    if (degree() < d.degree()) return std::nullopt;
    std::vector<Integer> rem = c;
    std::vector<Integer> quo(degree() - d.degree() + 1, Integer(0));
    for (long i = degree() - d.degree(); i >= 0; --i) {
      Integer top = rem[i + d.degree()];
      if (top == 0) continue;
      if (!mpz_divisible_p(top.get_mpz_t(), d.leading().get_mpz_t())) return std::nullopt;
      quo[i] = top / d.leading();
      for (long j = 0; j <= d.degree(); ++j) rem[i + j] -= quo[i] * d.c[j];
    }
    for (const auto& x : rem)
      if (x != 0) return std::nullopt;
    return TPoly(std::move(quo));
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (long i = degree(); i >= 0; --i) {
      if (c[i] == 0) continue;
      if (!s.empty()) s += c[i] > 0 ? " + " : " - ";
      else if (c[i] < 0) s += "-";
      Integer a = abs(c[i]);
      const bool unit = a == 1;
      if (i == 0) s += a.get_str();
      else {
        if (!unit) s += a.get_str() + "*";
        s += i == 1 ? "t" : "t^" + std::to_string(i);
      }
    }
    return s;
  }
};

// Every integer root with multiplicity, via divisor trial on the deflated
// polynomial and synthetic division. Requires a monic nonzero input.
inline std::multiset<long> integer_roots(const TPoly& p_in) {
  if (p_in.is_zero()) throw std::invalid_argument("integer_roots: zero polynomial");
  if (p_in.leading() != 1)
    throw std::invalid_argument("integer_roots: polynomial is not monic over Z");
  std::multiset<long> roots;
  TPoly p = p_in;
  while (!p.is_zero() && p.c[0] == 0) {
    roots.insert(0);
    p.c.erase(p.c.begin());
  }
  if (p.degree() <= 0) return roots;

  // Candidate roots divide the constant term; roots of any quotient divide
  // the original constant term too, so one divisor scan suffices.
  const Integer c0 = abs(p.c[0]);
  std::vector<Integer> divisors;
  for (Integer d = 1; d * d <= c0; ++d) {
    if (c0 % d != 0) continue;
    divisors.push_back(d);
    if (d * d != c0) divisors.push_back(c0 / d);
  }
  std::sort(divisors.begin(), divisors.end());
  for (const Integer& d : divisors) {
    for (const Integer& r : {d, Integer(-d)}) {
      while (p.degree() >= 1 && p.eval(r) == 0) {
        auto q = p.divide_exact(TPoly::linear_root(r));
        p = std::move(*q);
        roots.insert(to_long(r));
      }
    }
  }
  return roots;
}

}  // namespace arrfree
