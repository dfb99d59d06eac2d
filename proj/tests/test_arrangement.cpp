#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "arrfree/arrio.hpp"
#include "arrfree/lattice.hpp"
#include "helpers.hpp"

using namespace arrfree;
using namespace arrfree::testing;

TEST_CASE("cone of a one-dimensional affine point", "[arr]") {
  AffineArrangement a(1);
  a.add_hyperplane({Rational(1)}, Rational(1));
  const Arrangement c = cone(a);
  CHECK(c.dim == 2);
  REQUIRE(c.size() == 2);
  CHECK(c.infinity == 0);
  CHECK(c.forms[0] == Form{Rational(1), Rational(0)});       // x_0
  CHECK(c.forms[1] == Form{Rational(1), Rational(-1)});      // x - x_0, normalized
}

TEST_CASE("stanley cone has seven planes", "[arr]") {
  const Arrangement c = stanley_cone();
  CHECK(c.dim == 3);
  CHECK(c.size() == 7);
  CHECK(is_essential(c));
}

TEST_CASE("localize at flats", "[arr]") {
  const Arrangement b3 = boolean_arrangement(3);
  CHECK(localize(b3, ambient_flat(b3)).size() == 0);

  // z-axis = {x=0, y=0}
  QMatrix rows(2, 3);
  rows.at(0, 0) = 1;
  rows.at(1, 1) = 1;
  const Flat zaxis = make_flat(b3, rows);
  const Arrangement loc = localize(b3, zaxis);
  REQUIRE(loc.size() == 2);
  CHECK(loc.forms[0] == Form{Rational(1), Rational(0), Rational(0)});
  CHECK(loc.forms[1] == Form{Rational(0), Rational(1), Rational(0)});

  // the multiarrangement overload restricts the multiplicities
  const Multiarrangement mb3(b3, {5, 7, 11});
  const Multiarrangement mloc = localize(mb3, zaxis);
  CHECK(mloc.mult == std::vector<long>{5, 7});

  // a subspace that is not an intersection of hyperplanes
  QMatrix bad(1, 3);
  bad.at(0, 0) = 1;
  bad.at(0, 1) = 1;
  bad.at(0, 2) = 1;
  CHECK_THROWS_AS(localize(b3, make_flat(b3, bad)), std::invalid_argument);
}

TEST_CASE("ziegler restriction of the boolean arrangement", "[arr]") {
  const Multiarrangement r = ziegler_restriction(boolean_arrangement(3), 0);
  REQUIRE(r.base.size() == 2);
  CHECK(r.mult == std::vector<long>{1, 1});
  CHECK(r.total_multiplicity() == 2);
}

TEST_CASE("restriction multiplicities sum to #A - 1", "[arr][prop]") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const int dim = 2 + rng() % 3;
    const int n = dim + rng() % 5;
    const Arrangement a = random_arrangement(rng, dim, n);
    for (int h = 0; h < a.size(); ++h)
      CHECK(ziegler_restriction(a, h).total_multiplicity() == a.size() - 1);
  }
}

TEST_CASE("localization picks exactly the flats whose index set contains X",
          "[arr][prop]") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 8; ++trial) {
    const Arrangement a = random_arrangement(rng, 3, 4 + rng() % 4);
    const auto lat = build_lattice(a);
    for (const auto& x : lat.flats) {
      const Arrangement loc = localize(a, x);
      std::set<std::string> expected, got;
      for (int h = 0; h < a.size(); ++h)
        if ((x.index_set >> h) & 1) {
          std::string key;
          for (const auto& q : a.forms[h]) key += to_string(q) + " ";
          expected.insert(key);
        }
      for (const auto& f : loc.forms) {
        std::string key;
        for (const auto& q : f) key += to_string(q) + " ";
        got.insert(key);
      }
      CHECK(expected == got);
    }
  }
}

TEST_CASE("essentialize", "[arr]") {
  Arrangement single = make_arrangement(2, {{1, -1}});
  const auto ess = essentialize(single);
  CHECK(ess.rank == 1);
  CHECK(ess.arrangement.dim == 1);
  CHECK(ess.arrangement.size() == 1);

  CHECK(essentialize(braid4()).rank == 3);

  const Arrangement already = a2_essential();
  const auto same = essentialize(already);
  CHECK(same.rank == 2);
  CHECK(same.arrangement.canonical_key() == already.canonical_key());
}

TEST_CASE("essentialize preserves counts and mobius values", "[arr][prop]") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    Arrangement a(4);
    // span a 2- or 3-dimensional subspace of forms
    const Arrangement small = random_arrangement(rng, 2 + (int)(rng() % 2), 4, 2);
    for (const auto& f : small.forms) {
      Form lifted(4, Rational(0));
      for (size_t j = 0; j < f.size(); ++j) lifted[j] = f[j] + f[f.size() - 1];
      lifted[3] = f[f.size() - 1];
      try {
        a.add_form(std::move(lifted));
      } catch (const std::invalid_argument&) {
      }
    }
    if (a.size() < 3) continue;
    const auto ess = essentialize(a);
    REQUIRE(ess.arrangement.size() == a.size());
    const auto lat1 = build_lattice(a);
    const auto lat2 = build_lattice(ess.arrangement);
    REQUIRE(lat1.num_flats() == lat2.num_flats());
    std::multiset<std::pair<long, long>> m1, m2;  // (codim, mu)
    for (long i = 0; i < lat1.num_flats(); ++i)
      m1.emplace(a.dim - lat1.flats[i].dim, to_long(lat1.mobius[i]));
    for (long i = 0; i < lat2.num_flats(); ++i)
      m2.emplace(ess.arrangement.dim - lat2.flats[i].dim, to_long(lat2.mobius[i]));
    CHECK(m1 == m2);
  }
}

TEST_CASE("decompose", "[arr]") {
  const auto two = decompose(make_arrangement(2, {{1, 0}, {0, 1}}));
  CHECK(two.size() == 2);

  const auto one = decompose(make_arrangement(2, {{1, 0}, {0, 1}, {1, -1}}));
  CHECK(one.size() == 1);

  // A_1 + A_1 inside rank 4: {x1 - x2} + {x3 - x4}
  const auto pieces =
      decompose(essentialize(make_arrangement(4, {{1, -1, 0, 0}, {0, 0, 1, -1}})).arrangement);
  CHECK(pieces.size() == 2);
}

TEST_CASE("decompose returns a direct-sum partition into connected pieces",
          "[arr][prop]") {
  std::mt19937 rng(515);
  for (int trial = 0; trial < 12; ++trial) {
    const Arrangement a = random_arrangement(rng, 2 + rng() % 3, 3 + rng() % 5);
    const auto pieces = decompose(a);
    long rank_sum = 0, size_sum = 0;
    for (const auto& p : pieces) {
      const int r = arrangement_rank(p);
      rank_sum += r;
      size_sum += p.size();
      // a connected matroid of rank r >= 2 needs more than r elements
      if (r >= 2) CHECK(p.size() >= r + 1);
      if (r == 1) CHECK(p.size() == 1);
    }
    CHECK(rank_sum == a.dim);  // the partition is a genuine direct sum
    CHECK(size_sum == a.size());
  }
}

TEST_CASE("localization of the braid arrangement decomposes", "[arr]") {
  // flat {x1 = x2} cap {x3 = x4} of A_3
  const Arrangement b = braid4();
  QMatrix rows(2, 4);
  rows.at(0, 0) = 1;
  rows.at(0, 1) = -1;
  rows.at(1, 2) = 1;
  rows.at(1, 3) = -1;
  const Arrangement loc = localize(b, make_flat(b, rows));
  REQUIRE(loc.size() == 2);
  const auto pieces = decompose(essentialize(loc).arrangement);
  CHECK(pieces.size() == 2);
  for (const auto& p : pieces) CHECK(arrangement_rank(p) == 1);
}

TEST_CASE("text format round trip and errors", "[arr]") {
  const std::string text = "dim 3\n1 0 0\n0 1 1/2\n1 -3 0\n";
  const auto parsed = parse_arrangement_text(text);
  REQUIRE(std::holds_alternative<Arrangement>(parsed));
  const auto& a = std::get<Arrangement>(parsed);
  CHECK(a.size() == 3);
  CHECK(print_arrangement_text(a) == text);
  // non-canonical input normalizes to the same hyperplane set
  const auto scaled = parse_arrangement_text("dim 3\n1 0 0\n0 1 1/2\n-1/3 1 0\n");
  CHECK(std::get<Arrangement>(scaled).canonical_key() == a.canonical_key());

  const auto multi = parse_arrangement_text("dim 2\n1 0 | 2\n0 1 | 3\n");
  REQUIRE(std::holds_alternative<Multiarrangement>(multi));
  CHECK(std::get<Multiarrangement>(multi).total_multiplicity() == 5);

  const auto affine = parse_arrangement_text("dim 2\n1 0 = 1\n1 0 = 2\n");
  REQUIRE(std::holds_alternative<AffineArrangement>(affine));
  CHECK(std::get<AffineArrangement>(affine).size() == 2);

  // duplicates are rejected, errors carry the line number
  CHECK_THROWS_WITH(parse_arrangement_text("dim 2\n1 0\n2 0\n"),
                    Catch::Matchers::ContainsSubstring("duplicate"));
  CHECK_THROWS_WITH(parse_arrangement_text("dim 2\n1 x\n"),
                    Catch::Matchers::ContainsSubstring("line 2"));
  CHECK_THROWS_WITH(parse_arrangement_text("1 0\n"),
                    Catch::Matchers::ContainsSubstring("line 1"));
  CHECK_THROWS_AS(parse_arrangement_text("dim 2\n1 0 = 1\n0 1\n"), std::invalid_argument);
}
