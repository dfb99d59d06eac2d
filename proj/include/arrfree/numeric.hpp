#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace arrfree {

// Exact scalars. GMP keeps rationals canonical (gcd(|num|,den)=1, den>=1)
// as long as every value is built through canonicalizing paths, so all
// construction from raw num/den goes through make_rational below.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Canonical printing: "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

// Accepts "p" or "p/q" with optional sign; anything else is an error.
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&] {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  };
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return make_rational(Integer(text), 1);
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) bad();
    return make_rational(num, den);
  } catch (const std::invalid_argument&) {
    bad();
  }
  return Rational();  // unreachable
}

inline long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
  return z.get_si();
}

inline Integer binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// dim of the degree-d graded piece of a polynomial ring in nvars variables.
inline long monomial_count(int nvars, int deg) {
  if (deg < 0) return 0;
  if (nvars == 0) return deg == 0 ? 1 : 0;
  return to_long(binomial(deg + nvars - 1, nvars - 1));
}

inline Integer int_pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Divides a vector of integers by its content and makes the first nonzero
// entry positive. Zero vectors pass through unchanged.
inline void make_primitive(std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) return;
  int lead_sign = 0;
  for (const auto& x : v) {
    if (x != 0) {
      lead_sign = sgn(x);
      break;
    }
  }
  if (lead_sign < 0) g = -g;
  for (auto& x : v) x /= g;
}

// Clears denominators: returns the primitive integer vector proportional to
// the rational input with positive leading entry.
inline std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& q : v) den = lcm(den, q.get_den());
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(Integer(q.get_num() * (den / q.get_den())));
  make_primitive(out);
  return out;
}

}  // namespace arrfree
