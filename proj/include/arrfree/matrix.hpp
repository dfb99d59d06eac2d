#pragma once

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

#include "arrfree/numeric.hpp"

namespace arrfree {

// Dense matrices in row-major order. QMatrix is the public exact type;
// ZMatrix is the internal carrier for the graded linear systems (their rows
// can always be scaled integral).
struct QMatrix {
  long rows = 0, cols = 0;
  std::vector<Rational> a;

  QMatrix() = default;
  QMatrix(long r, long c) : rows(r), cols(c), a(r * c) {}
  Rational& at(long i, long j) { return a[i * cols + j]; }
  const Rational& at(long i, long j) const { return a[i * cols + j]; }
};

struct ZMatrix {
  long rows = 0, cols = 0;
  std::vector<Integer> a;

  ZMatrix() = default;
  ZMatrix(long r, long c) : rows(r), cols(c), a(r * c) {}
  Integer& at(long i, long j) { return a[i * cols + j]; }
  const Integer& at(long i, long j) const { return a[i * cols + j]; }

  void append_row(const std::vector<Integer>& row) {
    assert((long)row.size() == cols || rows == 0);
    if (rows == 0 && cols == 0) cols = row.size();
    a.insert(a.end(), row.begin(), row.end());
    ++rows;
  }
};

namespace detail {

// Fraction-free Gaussian elimination (Bareiss). Brings m to row-echelon form
// in place, returns the pivot columns. Every row below the pivot must take
// the full update at every step, even with a zero multiplier; selective
// skips or row rescaling break the minor invariant that keeps the divisions
// exact.
inline std::vector<long> bareiss_echelon(ZMatrix& m) {
  std::vector<long> pivot_cols;
  Integer prev = 1;
  long r = 0;
  for (long c = 0; c < m.cols && r < m.rows; ++c) {
    long piv = -1;
    for (long i = r; i < m.rows; ++i) {
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (long j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
    const Integer pivval = m.at(r, c);
    for (long i = r + 1; i < m.rows; ++i) {
      const Integer f = m.at(i, c);
      for (long j = c; j < m.cols; ++j) {
        Integer t = m.at(i, j) * pivval - f * m.at(r, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = std::move(t);
      }
      m.at(i, c) = 0;
    }
    prev = pivval;
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

// Rank over F_p for a word-size prime baked in at compile time so the
// compiler strength-reduces the reductions.
template <uint32_t P>
long rank_mod(const ZMatrix& m) {
  static_assert(P < (1u << 31), "prime must fit in 31 bits");
  const long rows = m.rows, cols = m.cols;
  std::vector<uint32_t> w(rows * cols);
  for (long i = 0; i < rows * cols; ++i)
    w[i] = (uint32_t)mpz_fdiv_ui(m.a[i].get_mpz_t(), P);
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i) {
      if (w[i * cols + c] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (long j = c; j < cols; ++j) std::swap(w[r * cols + j], w[piv * cols + j]);
    // normalize pivot row to 1 via Fermat inverse
    uint64_t inv = 1, b = w[r * cols + c], e = P - 2;
    while (e) {
      if (e & 1) inv = inv * b % P;
      b = b * b % P;
      e >>= 1;
    }
    for (long j = c; j < cols; ++j)
      w[r * cols + j] = (uint32_t)(w[r * cols + j] * inv % P);
    for (long i = r + 1; i < rows; ++i) {
      const uint64_t f = w[i * cols + c];
      if (!f) continue;
      const uint64_t fneg = P - f;
      uint32_t* wi = &w[i * cols];
      const uint32_t* wr = &w[r * cols];
      for (long j = c; j < cols; ++j) wi[j] = (uint32_t)((wi[j] + fneg * wr[j]) % P);
    }
    ++r;
  }
  return r;
}

inline bool force_exact_rank() {
  static const bool v = std::getenv("ARRFREE_EXACT_RANK") != nullptr;
  return v;
}

}  // namespace detail

enum class RankMode { Exact, Auto };

// Exact rank over Q of an integer matrix.
inline long rank_exact(ZMatrix m) {
  return (long)detail::bareiss_echelon(m).size();
}

// Rank for the graded dimension sweeps. Exact Bareiss for small systems; for
// the large ones, elimination modulo two fixed 31-bit primes. A modular rank
// can only undercount (when a prime divides every nonzero maximal minor), so
// we take the max of the two primes; every caller feeds the result into an
// exact cross-check equality that fails loudly on an undercount.
// ARRFREE_EXACT_RANK=1 forces Bareiss everywhere.
inline long rank(const ZMatrix& m, RankMode mode = RankMode::Auto) {
  if (m.rows == 0 || m.cols == 0) return 0;
  if (mode == RankMode::Exact || detail::force_exact_rank() ||
      std::min(m.rows, m.cols) <= 48)
    return rank_exact(m);
  const long r1 = detail::rank_mod<2147483647u>(m);
  const long r2 = detail::rank_mod<2147483629u>(m);
  return std::max(r1, r2);
}

// Canonical kernel basis of an integer matrix: reduced echelon back-solve,
// one basis vector per free column carrying a 1 there and 0 at the other
// free columns. Entries are exact rationals.
inline std::vector<std::vector<Rational>> kernel_basis(ZMatrix m) {
  const long cols = m.cols;
  const std::vector<long> pivots = detail::bareiss_echelon(m);
  const long rank = (long)pivots.size();
  std::vector<bool> is_pivot(cols, false);
  for (long c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (long f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (long r = rank - 1; r >= 0; --r) {
      const long c = pivots[r];
      Rational s(0);
      for (long j = c + 1; j < cols; ++j)
        if (v[j] != 0) s += Rational(m.at(r, j)) * v[j];
      v[c] = -s / Rational(m.at(r, c));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Public exact kernel over Q (right null space), canonical as above.
inline std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m) {
  ZMatrix z(m.rows, m.cols);
  for (long i = 0; i < m.rows; ++i) {
    Integer den = 1;
    for (long j = 0; j < m.cols; ++j) den = lcm(den, m.at(i, j).get_den());
    for (long j = 0; j < m.cols; ++j) {
      const Rational& q = m.at(i, j);
      z.at(i, j) = q.get_num() * (den / q.get_den());
    }
  }
  return kernel_basis(std::move(z));
}

inline long rank(const QMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  return m.cols - (long)kernel_basis(m).size();
}

// Unique reduced row echelon form over Q; zero rows are dropped, so equal
// row spaces give byte-identical results. Used as the canonical key for
// flats of the intersection lattice.
inline QMatrix rref(QMatrix m) {
  long r = 0;
  for (long c = 0; c < m.cols && r < m.rows; ++c) {
    long piv = -1;
    for (long i = r; i < m.rows; ++i) {
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (long j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
    const Rational pv = m.at(r, c);
    for (long j = c; j < m.cols; ++j) m.at(r, j) /= pv;
    for (long i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const Rational f = m.at(i, c);
      for (long j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  QMatrix out(r, m.cols);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

// Solves A x = rhs when A has full column rank; nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve_unique(const QMatrix& A,
                                                         const std::vector<Rational>& rhs) {
  QMatrix aug(A.rows, A.cols + 1);
  for (long i = 0; i < A.rows; ++i) {
    for (long j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = rhs[i];
  }
  const QMatrix red = rref(aug);
  std::vector<Rational> x(A.cols, Rational(0));
  for (long r = 0; r < red.rows; ++r) {
    long pc = -1;
    for (long j = 0; j < red.cols; ++j)
      if (red.at(r, j) != 0) {
        pc = j;
        break;
      }
    if (pc == A.cols) return std::nullopt;  // 0 = nonzero row
    if (pc >= 0) {
      for (long j = pc + 1; j < A.cols; ++j)
        if (red.at(r, j) != 0) throw std::logic_error("solve_unique: matrix not full column rank");
      x[pc] = red.at(r, A.cols);
    }
  }
  return x;
}

// Row-space membership against an RREF basis: returns the coordinates of v
// in the basis rows, or nullopt when v is outside the row space.
inline std::optional<std::vector<Rational>> in_row_space(const QMatrix& rref_basis,
                                                         const std::vector<Rational>& v) {
  assert((long)v.size() == rref_basis.cols || rref_basis.rows == 0);
  std::vector<Rational> rem = v;
  std::vector<Rational> coords(rref_basis.rows, Rational(0));
  for (long r = 0; r < rref_basis.rows; ++r) {
    long pc = -1;
    for (long j = 0; j < rref_basis.cols; ++j) {
      if (rref_basis.at(r, j) != 0) {
        pc = j;
        break;
      }
    }
    assert(pc >= 0);
    if (rem[pc] == 0) continue;
    coords[r] = rem[pc];
    for (long j = pc; j < rref_basis.cols; ++j) rem[j] -= coords[r] * rref_basis.at(r, j);
  }
  for (const auto& x : rem)
    if (x != 0) return std::nullopt;
  return coords;
}

}  // namespace arrfree
