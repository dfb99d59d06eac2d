#pragma once

#include <stdexcept>
#include <vector>

#include "arrfree/upoly.hpp"

namespace arrfree {

// Polynomial in x whose coefficients are integer polynomials in t,
// dense in x low-to-high.
struct XPolyT {
  std::vector<TPoly> c;

  XPolyT() = default;
  explicit XPolyT(TPoly constant) {
    if (!constant.is_zero()) c.push_back(std::move(constant));
  }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  long degree() const { return (long)c.size() - 1; }

  static XPolyT x_power(long e, TPoly coeff = TPoly(1)) {
    XPolyT p;
    if (coeff.is_zero()) return p;
    p.c.assign(e + 1, TPoly());
    p.c[e] = std::move(coeff);
    return p;
  }

  friend XPolyT operator+(const XPolyT& a, const XPolyT& b) {
    XPolyT r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = r.c[i] + a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
    r.trim();
    return r;
  }
  friend XPolyT operator-(const XPolyT& a, const XPolyT& b) {
    XPolyT r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = r.c[i] + a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
    r.trim();
    return r;
  }
  friend XPolyT operator*(const XPolyT& a, const XPolyT& b) {
    XPolyT r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, TPoly());
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  friend bool operator==(const XPolyT& a, const XPolyT& b) { return a.c == b.c; }

  TPoly eval_x_at_one() const {
    TPoly s;
    for (const auto& p : c) s = s + p;
    return s;
  }

  // Coefficients in t of the value at a rational x.
  std::vector<Rational> eval_x(const Rational& x) const {
    long tdeg = -1;
    for (const auto& p : c) tdeg = std::max(tdeg, p.degree());
    std::vector<Rational> out(tdeg + 1, Rational(0));
    Rational xp(1);
    for (const auto& p : c) {
      for (long i = 0; i <= p.degree(); ++i) out[i] += Rational(p.coeff(i)) * xp;
      xp *= x;
    }
    return out;
  }

  // Exact quotient by (1 - x); nullopt when (1 - x) does not divide.
  std::optional<XPolyT> divide_by_one_minus_x() const {
    if (is_zero()) return XPolyT();
    XPolyT q;
    q.c.resize(c.size());
    TPoly carry;
    for (size_t i = 0; i < c.size(); ++i) {
      carry = c[i] + carry;
      q.c[i] = carry;
    }
    if (!q.c.back().is_zero()) return std::nullopt;  // remainder = eval at 1
    q.c.pop_back();
    q.trim();
    return q;
  }
};

// Rational function in x over Z[t], kept reduced so that (1 - x) never
// divides both numerator and denominator.
struct XRatFunc {
  XPolyT num, den;

  XRatFunc() : den(XPolyT(TPoly(1))) {}
  XRatFunc(XPolyT n, XPolyT d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::invalid_argument("rational function with zero denominator");
    reduce_one_minus_x();
  }

  void reduce_one_minus_x() {
    while (true) {
      auto n2 = num.divide_by_one_minus_x();
      if (!n2) return;
      auto d2 = den.divide_by_one_minus_x();
      if (!d2) return;
      num = std::move(*n2);
      den = std::move(*d2);
    }
  }

  friend XRatFunc operator+(const XRatFunc& a, const XRatFunc& b) {
    return XRatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend XRatFunc operator*(const XRatFunc& a, const XRatFunc& b) {
    return XRatFunc(a.num * b.num, a.den * b.den);
  }
};

// Value at x = 1 as a polynomial in t. Errors with "pole at x=1" when the
// reduced denominator vanishes there.
inline TPoly limit_x_to_one(const XRatFunc& f) {
  XRatFunc g = f;  // ensure reduced
  g.reduce_one_minus_x();
  const TPoly d1 = g.den.eval_x_at_one();
  if (d1.is_zero()) throw std::runtime_error("pole at x=1");
  const TPoly n1 = g.num.eval_x_at_one();
  auto q = n1.divide_exact(d1);
  if (!q) throw std::runtime_error("limit at x=1 is not a polynomial in t");
  return *q;
}

}  // namespace arrfree
