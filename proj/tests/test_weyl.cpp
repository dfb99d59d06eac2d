#include <catch2/catch_amalgamated.hpp>

#include "arrfree/weyl.hpp"
#include "helpers.hpp"

using namespace arrfree;

namespace {

std::vector<int> all_roots(const RootSystemDesc& d) {
  std::vector<int> v(d.positive_roots.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = (int)i;
  return v;
}

// every order ideal of a (small) positive system, by subset scan
std::vector<std::vector<int>> all_order_ideals(const RootSystemDesc& d) {
  const int n = (int)d.positive_roots.size();
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> ideal;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) ideal.push_back(i);
    if (order_ideal_check(d, ideal)) out.push_back(std::move(ideal));
  }
  return out;
}

}  // namespace

TEST_CASE("positive root counts and simple-root coordinates", "[weyl]") {
  CHECK(root_system("A2").positive_roots.size() == 3);
  CHECK(root_system("B2").positive_roots.size() == 4);
  CHECK(root_system("G2").positive_roots.size() == 6);
  CHECK(root_system("A3").positive_roots.size() == 6);
  CHECK(root_system("B3").positive_roots.size() == 9);
  CHECK(root_system("C3").positive_roots.size() == 9);
  CHECK(root_system("D4").positive_roots.size() == 12);
  CHECK_THROWS_WITH(root_system("G3"), Catch::Matchers::ContainsSubstring("unsupported"));
  CHECK_THROWS_WITH(root_system("E6"), Catch::Matchers::ContainsSubstring("unsupported"));
}

TEST_CASE("exponents and coxeter numbers are computed, with duality", "[weyl]") {
  auto check = [](const char* name, std::vector<long> exps, long h) {
    const auto data = exponent_data(root_system(name));
    CHECK(data.exponents == exps);
    CHECK(data.coxeter == h);
  };
  check("A2", {1, 2}, 3);
  check("B2", {1, 3}, 4);
  check("G2", {1, 5}, 6);
  check("A3", {1, 2, 3}, 4);
  check("B3", {1, 3, 5}, 6);
  check("C3", {1, 3, 5}, 6);
  check("D4", {1, 3, 3, 5}, 6);
}

TEST_CASE("family hyperplane counts", "[weyl]") {
  const auto a2 = root_system("A2");
  CHECK(build_family(FamilySpec::weyl(a2)).size() == 3);
  CHECK(build_family(FamilySpec::shi(a2, 1)).size() == 6);
  CHECK(build_family(FamilySpec::catalan(a2, 1)).size() == 9);
  CHECK(build_family(FamilySpec::interpolating(a2, {0}, 1)).size() == 7);
  CHECK(cone(build_family(FamilySpec::shi(a2, 1))).size() == 7);

  // interval [p, q] has #roots * (q - p + 1) hyperplanes
  CHECK(build_family(FamilySpec::interval(root_system("G2"), -1, 1)).size() == 18);
}

TEST_CASE("order ideals", "[weyl]") {
  const auto a2 = root_system("A2");
  CHECK(order_ideal_check(a2, {}));
  CHECK(order_ideal_check(a2, all_roots(a2)));
  // the highest root alone is not downward closed
  int highest = -1;
  for (int r = 0; r < 3; ++r) {
    long total = 0;
    for (long c : a2.simple_coords[r]) total += c;
    if (total == 2) highest = r;
  }
  REQUIRE(highest >= 0);
  CHECK(!order_ideal_check(a2, {highest}));
  CHECK_THROWS_AS(build_family(FamilySpec::interpolating(a2, {highest}, 1)),
                  std::invalid_argument);
  CHECK(all_order_ideals(a2).size() == 5);
}

TEST_CASE("expected exponents of the deformation families", "[weyl]") {
  const auto a2 = root_system("A2");
  CHECK(expected_exponents(FamilySpec::shi(a2, 1)) == std::vector<long>{1, 3, 3});
  CHECK(expected_exponents(FamilySpec::catalan(root_system("G2"), 1)) ==
        std::vector<long>{1, 7, 11});
  // A_2 with a single simple root: exp(A(Psi)) = (0, 1), shifted by m h = 3
  CHECK(expected_exponents(FamilySpec::interpolating(a2, {a2.simple_indices[0]}, 1)) ==
        std::vector<long>{1, 3, 4});
}

TEST_CASE("rank-1 root system families", "[weyl]") {
  const auto d = root_system("A1");
  CHECK(exponent_data(d).exponents == std::vector<long>{1});
  CHECK(exponent_data(d).coxeter == 2);
  for (long m = 1; m <= 2; ++m) {
    CHECK(verify_edelman_reiner(FamilySpec::shi(d, m)).pass);
    CHECK(verify_edelman_reiner(FamilySpec::catalan(d, m)).pass);
  }
}

TEST_CASE("edelman-reiner verification at rank 2", "[weyl]") {
  for (const char* name : {"A2", "B2", "G2"}) {
    const auto d = root_system(name);
    for (long m = 1; m <= 1; ++m) {
      const auto shi = verify_edelman_reiner(FamilySpec::shi(d, m));
      CHECK(shi.pass);
      const auto cat = verify_edelman_reiner(FamilySpec::catalan(d, m));
      CHECK(cat.pass);
    }
  }
  // named check: A_2 Shi m=1 has chi_0 = (t-3)^2
  const auto rep = verify_edelman_reiner(FamilySpec::shi(root_system("A2"), 1));
  CHECK(rep.chi_affine == TPoly::from_roots({Integer(3), Integer(3)}) * TPoly::t_power(1));
  CHECK(rep.expected == std::vector<long>{1, 3, 3});
}

TEST_CASE("cone and restriction of the A2 Shi family", "[weyl]") {
  const auto fc = build_family_cone(FamilySpec::shi(root_system("A2"), 1));
  CHECK(fc.cone.size() == 7);      // 3 roots x 2 offsets + infinity
  CHECK(fc.rank == 3);
  CHECK(cone(build_family(FamilySpec::shi(root_system("A2"), 1))).dim == 4);

  // restriction at infinity: the A_2 Weyl arrangement with constant
  // multiplicity 2, total 6 = #A - 1
  const Multiarrangement rest = ziegler_restriction(fc.cone, 0);
  CHECK(rest.base.size() == 3);
  CHECK(rest.mult == std::vector<long>{2, 2, 2});
  CHECK(rest.total_multiplicity() == 6);
}

TEST_CASE("chi of the G2 Catalan cone", "[weyl]") {
  const auto fc = build_family_cone(FamilySpec::catalan(root_system("G2"), 1));
  CHECK(fc.cone.size() == 19);
  CHECK(fc.rank == 3);
  CHECK(char_poly(fc.cone) ==
        TPoly::from_roots({Integer(1), Integer(7), Integer(11)}));
}

TEST_CASE("edelman-reiner verification at rank 3 via the high-rank route", "[weyl]") {
  const auto rep = verify_edelman_reiner(FamilySpec::shi(root_system("A3"), 1));
  CHECK(rep.pass);
  CHECK(rep.expected == std::vector<long>{1, 4, 4, 4});
  CHECK(rep.freeness.evidence == "restriction-and-local-freeness");

  const auto c3 = verify_edelman_reiner(FamilySpec::shi(root_system("C3"), 1));
  CHECK(c3.pass);
  CHECK(c3.expected == std::vector<long>{1, 6, 6, 6});
}

TEST_CASE("edelman-reiner verification for D4", "[weyl]") {
  const auto rep = verify_edelman_reiner(FamilySpec::shi(root_system("D4"), 1));
  CHECK(rep.pass);
  CHECK(rep.expected == std::vector<long>{1, 6, 6, 6, 6});
}

TEST_CASE("ziegler restriction map is surjective below the top exponent for free cones",
          "[weyl][prop]") {
  const auto fc = build_family_cone(FamilySpec::shi(root_system("A3"), 1));
  const Arrangement adapted = adapted_arrangement(fc.cone, 0);
  const Multiarrangement rest = ziegler_restriction(fc.cone, 0);
  for (long d = 0; d <= 6; ++d) {  // largest exponent 4, plus 2
    const auto dims = deriv0_restriction_image(adapted, d);
    CHECK(dims.dim_image == derivation_space_dim(rest, d));
  }
}

TEST_CASE("interpolating family: chi shift identity across all ideals", "[weyl][prop]") {
  for (const char* name : {"A2", "B2"}) {
    const auto d = root_system(name);
    const auto data = exponent_data(d);
    for (long m = 1; m <= 2; ++m) {
      for (const auto& ideal : all_order_ideals(d)) {
        const auto f = FamilySpec::interpolating(d, ideal, m);
        // chi(A(Phi,Psi,m), t) = chi(A(Psi), t - m h)
        Arrangement sub(d.ambient);
        for (int r : ideal) {
          Form form(d.ambient);
          for (int i = 0; i < d.ambient; ++i) form[i] = Rational(d.positive_roots[r][i]);
          sub.add_form(std::move(form));
        }
        // strip the t-power of the non-essential directions: the identity
        // lives in the rank-l span of the root system
        const TPoly tpow = TPoly::t_power(d.ambient - d.rank);
        const TPoly lhs = *char_poly(build_family(f)).divide_exact(tpow);
        const TPoly rhs =
            char_poly(sub).divide_exact(tpow)->compose_shift(Integer(-m * data.coxeter));
        CHECK(lhs == rhs);
        // and the cone is free with exponents (1, e_i' + m h)
        const auto expected = expected_exponents(f);
        const auto rep = decide_free(build_family_cone(f).cone, expected);
        CHECK(rep.verdict == Verdict::Free);
        CHECK(rep.exponents == expected);
      }
    }
  }
}

TEST_CASE("edelman-reiner verification of an interpolating family", "[weyl]") {
  const auto a2 = root_system("A2");
  const auto rep =
      verify_edelman_reiner(FamilySpec::interpolating(a2, {a2.simple_indices[0]}, 1));
  CHECK(rep.pass);
  CHECK(rep.expected == std::vector<long>{1, 3, 4});
}

TEST_CASE("interpolation endpoints reproduce shi and catalan", "[weyl]") {
  for (const char* name : {"A2", "B2"}) {
    const auto d = root_system(name);
    for (long m = 1; m <= 2; ++m) {
      const auto shi_aff = build_family(FamilySpec::shi(d, m));
      const auto empty_ideal = build_family(FamilySpec::interpolating(d, {}, m));
      CHECK(cone(shi_aff).canonical_key() == cone(empty_ideal).canonical_key());

      const auto cat_aff = build_family(FamilySpec::catalan(d, m));
      const auto full_ideal = build_family(FamilySpec::interpolating(d, all_roots(d), m));
      CHECK(cone(cat_aff).canonical_key() == cone(full_ideal).canonical_key());
    }
  }
}

TEST_CASE("localizations inside the infinity hyperplane decompose into family members",
          "[weyl][prop]") {
  const auto a2_shi = verify_family_localizations(FamilySpec::shi(root_system("A2"), 1));
  CHECK(a2_shi.pass);

  const auto a3_shi = verify_family_localizations(FamilySpec::shi(root_system("A3"), 1));
  CHECK(a3_shi.pass);
  CHECK(a3_shi.flats_checked > 0);
  CHECK(a3_shi.components_verified > 0);

  const auto b3_cat = verify_family_localizations(FamilySpec::catalan(root_system("B3"), 1));
  CHECK(b3_cat.pass);
}
