#pragma once

#include <random>
#include <vector>

#include "arrfree/arrangement.hpp"

namespace arrfree::testing {

inline Arrangement make_arrangement(int dim, const std::vector<std::vector<long>>& rows) {
  Arrangement a(dim);
  for (const auto& r : rows) {
    Form f(dim);
    for (int j = 0; j < dim; ++j) f[j] = Rational(r[j]);
    a.add_form(std::move(f));
  }
  return a;
}

inline Arrangement boolean_arrangement(int dim) {
  Arrangement a(dim);
  for (int i = 0; i < dim; ++i) {
    Form f(dim, Rational(0));
    f[i] = 1;
    a.add_form(std::move(f));
  }
  return a;
}

// A_2 Weyl arrangement in essential coordinates: x, y, x - y.
inline Arrangement a2_essential() {
  return make_arrangement(2, {{1, 0}, {0, 1}, {1, -1}});
}

// The braid arrangement A_3: x_i - x_j in R^4 (essential rank 3).
inline Arrangement braid4() {
  Arrangement a(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Form f(4, Rational(0));
      f[i] = 1;
      f[j] = -1;
      a.add_form(std::move(f));
    }
  return a;
}

// Frozen realization of Stanley's example: five concurrent lines plus one
// generic line, six distinct directions.
inline AffineArrangement stanley_affine() {
  AffineArrangement a(2);
  auto line = [&](long cx, long cy, long off) {
    Form f{Rational(cx), Rational(cy)};
    a.add_hyperplane(std::move(f), Rational(off));
  };
  line(-1, 1, 0);  // y = x
  line(1, 1, 0);   // y = -x
  line(-2, 1, 0);  // y = 2x
  line(2, 1, 0);   // y = -2x
  line(1, 0, 0);   // x = 0
  line(0, 1, 1);   // y = 1
  return a;
}

inline Arrangement stanley_cone() { return cone(stanley_affine()); }

// Random essential central arrangement with small integer coefficients.
inline Arrangement random_arrangement(std::mt19937& rng, int dim, int nforms, int coeff_bound = 3) {
  while (true) {
    Arrangement a(dim);
    int guard = 0;
    while (a.size() < nforms && guard < 400) {
      ++guard;
      std::vector<long> row(dim);
      bool nonzero = false;
      for (int j = 0; j < dim; ++j) {
        row[j] = (long)(rng() % (2 * coeff_bound + 1)) - coeff_bound;
        nonzero |= row[j] != 0;
      }
      if (!nonzero) continue;
      Form f(dim);
      for (int j = 0; j < dim; ++j) f[j] = Rational(row[j]);
      try {
        a.add_form(std::move(f));
      } catch (const std::invalid_argument&) {
      }
    }
    if (a.size() == nforms && is_essential(a)) return a;
  }
}

}  // namespace arrfree::testing
