#pragma once

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "arrfree/gradedspace.hpp"
#include "arrfree/logmod.hpp"
#include "arrfree/ratfunc.hpp"

namespace arrfree {

// Exponent data of a free (multi)arrangement.
struct FreeHilbertData {
  int rank = 0;
  std::vector<long> exponents;

  FreeHilbertData(int r, std::vector<long> e) : rank(r), exponents(std::move(e)) {
    if ((int)exponents.size() != rank)
      throw std::invalid_argument("need one exponent per dimension");
  }
};

// Hilbert series of Omega^p for a free module with basis degrees -d_i:
// P(Omega^p, x) = e_p(x^{-d_1}, ..., x^{-d_l}) / (1-x)^l, returned with the
// common shift x^{sum d_i} in numerator and denominator cleared.
inline XRatFunc hilbert_series_free(const FreeHilbertData& h, int p) {
  const int l = h.rank;
  if (p < 0 || p > l) throw std::invalid_argument("form degree out of range");
  long total = 0;
  for (long d : h.exponents) total += d;

  XPolyT num;
  for (const auto& subset : p_subsets(l, p)) {
    long s = 0;
    for (int i : subset) s += h.exponents[i];
    num = num + XPolyT::x_power(total - s);
  }
  XPolyT den = XPolyT::x_power(total);
  XPolyT one_minus_x;
  one_minus_x.c = {TPoly(1), TPoly(-1)};
  for (int i = 0; i < l; ++i) den = den * one_minus_x;
  return XRatFunc(std::move(num), std::move(den));
}

// Equality of rational functions by cross-multiplication.
inline bool xratfunc_equal(const XRatFunc& a, const XRatFunc& b) {
  return a.num * b.den == b.num * a.den;
}

// Solomon-Terao evaluation for free data: assembles
// Phi = sum_p P(Omega^p, x) y^p, substitutes y = t(1-x) - 1 and takes the
// limit at x = 1. The result must be prod (t - d_i).
inline TPoly solomon_terao_chi(const FreeHilbertData& h) {
  const int l = h.rank;
  long total = 0;
  for (long d : h.exponents) total += d;

  // y = t(1-x) - 1 = (t-1) - t x
  XPolyT y;
  y.c = {TPoly(std::vector<Integer>{-1, 1}), TPoly(std::vector<Integer>{0, -1})};

  XPolyT num;  // common denominator x^total (1-x)^l
  XPolyT ypow(TPoly(1));
  for (int p = 0; p <= l; ++p) {
    XPolyT ep;
    for (const auto& subset : p_subsets(l, p)) {
      long s = 0;
      for (int i : subset) s += h.exponents[i];
      ep = ep + XPolyT::x_power(total - s);
    }
    num = num + ep * ypow;
    ypow = ypow * y;
  }
  XPolyT den = XPolyT::x_power(total);
  XPolyT one_minus_x;
  one_minus_x.c = {TPoly(1), TPoly(-1)};
  for (int i = 0; i < l; ++i) den = den * one_minus_x;

  const TPoly chi = limit_x_to_one(XRatFunc(std::move(num), std::move(den)));
  std::vector<Integer> roots;
  for (long d : h.exponents) roots.push_back(Integer(d));
  if (!(chi == TPoly::from_roots(roots)))
    throw std::logic_error("Solomon-Terao limit disagrees with the exponent product");
  return chi;
}

// ---------------------------------------------------------------------------
// Truncated Laurent series with exact lower bound and a validity cutoff.
namespace detail {

struct LSeries {
  long lo = 0, hi = -1;      // valid exponent window; exact zero below lo
  std::vector<Integer> c;    // coefficient of x^{lo+i}

  Integer at(long e) const {
    if (e < lo || e > hi) return 0;
    return c[e - lo];
  }
  static LSeries zero(long lo_, long hi_) {
    LSeries s;
    s.lo = lo_;
    s.hi = hi_;
    s.c.assign(hi_ - lo_ + 1, Integer(0));
    return s;
  }
  friend LSeries operator+(const LSeries& a, const LSeries& b) {
    LSeries r = zero(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
    for (long e = r.lo; e <= r.hi; ++e) r.c[e - r.lo] = a.at(e) + b.at(e);
    return r;
  }
  friend LSeries operator-(const LSeries& a, const LSeries& b) {
    LSeries r = zero(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
    for (long e = r.lo; e <= r.hi; ++e) r.c[e - r.lo] = a.at(e) - b.at(e);
    return r;
  }
  LSeries shift(long k) const {  // multiply by x^k
    LSeries r = *this;
    r.lo += k;
    r.hi += k;
    return r;
  }
};

}  // namespace detail

// Per-degree comparison report for the restriction Hilbert identity
//   sum_p P(M^p, x) y^p = x(1-x)/(x+y) * Phi(A; x, y)
// on a 3-arrangement, both sides computed from honest graded dimensions:
// Omega^p(A) piece dimensions on the right, restriction image dimensions on
// the left. Agreement is checked for every p and every degree up to the
// bound.
struct HilbFormulaReport {
  long degree_bound = 0;
  bool pass = false;
  bool remainder_zero = false;
  std::vector<std::tuple<int, long, Integer, Integer>> mismatches;  // p, degree, lhs, rhs
};

inline HilbFormulaReport hilbformula_check(const Arrangement& a, int h, long degree_bound) {
  if (a.dim != 3 || !is_essential(a))
    throw std::invalid_argument("hilbformula_check requires an essential 3-arrangement");
  if (degree_bound < a.size())
    throw std::invalid_argument("degree bound must be at least #A");
  const int l = 3;
  const long n = a.size();
  const long hi = degree_bound + l + 2;  // slack consumed by the division below
  const long lo = -(n + 1);

  const Arrangement adapted = adapted_arrangement(a, h);
  const Multiarrangement simple(a);

  std::vector<detail::LSeries> phi(l + 1), img(l);
  for (int p = 0; p <= l; ++p) {
    phi[p] = detail::LSeries::zero(lo, hi);
    for (long d = lo; d <= hi; ++d) phi[p].c[d - lo] = omega_space_dim(simple, p, d);
  }
  for (int p = 0; p < l; ++p) {
    img[p] = detail::LSeries::zero(lo, hi);
    for (long d = lo; d <= hi; ++d)
      img[p].c[d - lo] = omega_restriction_image(adapted, p, d).dim_image;
  }

  // right side: divide x(1-x) Phi by (y + x)
  std::vector<detail::LSeries> scaled(l + 1);
  for (int p = 0; p <= l; ++p) scaled[p] = phi[p].shift(1) - phi[p].shift(2);
  std::vector<detail::LSeries> quot(l);
  quot[l - 1] = scaled[l];
  for (int p = l - 1; p >= 1; --p) quot[p - 1] = scaled[p] - quot[p].shift(1);
  const detail::LSeries remainder = scaled[0] - quot[0].shift(1);

  HilbFormulaReport rep;
  rep.degree_bound = degree_bound;
  rep.remainder_zero = true;
  for (long e = remainder.lo; e <= std::min(remainder.hi, degree_bound); ++e)
    if (remainder.at(e) != 0) rep.remainder_zero = false;
  for (int p = 0; p < l; ++p) {
    if (quot[p].hi < degree_bound || img[p].hi < degree_bound)
      throw std::logic_error("series window too small for the requested bound");
    for (long e = std::min(img[p].lo, quot[p].lo); e <= degree_bound; ++e)
      if (img[p].at(e) != quot[p].at(e))
        rep.mismatches.emplace_back(p, e, img[p].at(e), quot[p].at(e));
  }
  rep.pass = rep.remainder_zero && rep.mismatches.empty();
  return rep;
}

}  // namespace arrfree
