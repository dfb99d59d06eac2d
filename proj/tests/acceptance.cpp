// Acceptance suite: one line per criterion, PASS/FAIL with timing.
// Exit code = number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arrfree/arrfree.hpp"
#include "helpers.hpp"

using namespace arrfree;
using namespace arrfree::testing;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_seconds > 0 && dt > budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  std::printf("criterion %d: %s (%.1fs) %s%s%s\n", number, ok ? "PASS" : "FAIL", dt,
              label.c_str(), detail.empty() ? "" : " - ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

TPoly tpoly(std::vector<long> coeffs) {
  std::vector<Integer> c(coeffs.begin(), coeffs.end());
  return TPoly(std::move(c));
}

Arrangement family_cone_arrangement(const char* type, bool catalan, long m) {
  const auto d = root_system(type);
  const auto f = catalan ? FamilySpec::catalan(d, m) : FamilySpec::shi(d, m);
  return build_family_cone(f).cone;
}

struct Named {
  std::string name;
  Arrangement arr;
};

std::vector<Named> corpus() {
  std::vector<Named> c;
  c.push_back({"boolean3", boolean_arrangement(3)});
  c.push_back({"a2-weyl", a2_essential()});
  c.push_back({"a3-braid", essentialize(braid4()).arrangement});
  c.push_back({"stanley-cone", stanley_cone()});
  c.push_back({"a2-shi-1-cone", family_cone_arrangement("A2", false, 1)});
  c.push_back({"b2-catalan-1-cone", family_cone_arrangement("B2", true, 1)});
  c.push_back({"g2-catalan-1-cone", family_cone_arrangement("G2", true, 1)});
  c.push_back({"a3-shi-1-cone", family_cone_arrangement("A3", false, 1)});
  return c;
}

std::vector<Arrangement> random_corpus() {
  std::mt19937 rng(0xacce97);
  std::vector<Arrangement> arrs;
  for (int i = 0; i < 50; ++i)
    arrs.push_back(random_arrangement(rng, 3, 5 + (int)(rng() % 5)));
  return arrs;
}

}  // namespace

int main() {
  const std::vector<Arrangement> randoms = random_corpus();

  criterion(1, "Stanley example: chi, restriction exponents, verdict, codim", 5,
            [&](std::string& detail) {
              const Arrangement a = stanley_cone();
              bool ok = char_poly(a) == tpoly({-9, 15, -7, 1});
              const auto rep = decide_free_rank3(a, 0);
              ok = ok && rep.restriction_exponents == std::vector<long>{1, 5};
              ok = ok && rep.verdict == Verdict::NotFree;
              ok = ok && rep.codim_closed_form == 4;
              const auto sweep = codim_restriction_sweep(a, 0);
              ok = ok && sweep.total == 4;
              std::ostringstream ss;
              ss << "chi=(t-1)(t-3)^2, exps (1,5), codim closed=" << rep.codim_closed_form
                 << " sweep=" << sweep.total;
              detail = ss.str();
              return ok;
            });

  criterion(2, "graded cokernel equals chi_0(0) - d2'd3' on 50 random 3-arrangements",
            300, [&](std::string& detail) {
              long checks = 0;
              for (const auto& a : randoms) {
                const TPoly chi0 = reduced_char_poly(a);
                for (int h = 0; h < a.size(); ++h) {
                  const auto sweep = codim_restriction_sweep(a, h);
                  const Integer expected =
                      chi0.eval(0) - Integer(sweep.d2p) * Integer(sweep.d3p);
                  if (Integer(sweep.total) != expected) {
                    detail = "mismatch at arrangement with " +
                             std::to_string(a.size()) + " hyperplanes, h=" +
                             std::to_string(h);
                    return false;
                  }
                  ++checks;
                }
              }
              detail = std::to_string(checks) + " (arrangement, hyperplane) pairs";
              return true;
            });

  criterion(3, "rank-3 verdict equals Saito certificate existence on the same corpus", 0,
            [&](std::string& detail) {
              long agree = 0;
              for (const auto& a : randoms) {
                const auto rep = decide_free_rank3(a, 0);
                const auto cert = saito_certificate(
                    Multiarrangement(a),
                    {1, rep.restriction_exponents[0], rep.restriction_exponents[1]});
                if ((rep.verdict == Verdict::Free) != cert.has_value()) {
                  detail = "disagreement found";
                  return false;
                }
                ++agree;
              }
              detail = std::to_string(agree) + "/50 agree";
              return true;
            });

  // rank-2 Edelman-Reiner: chi_0 must take the conjectured closed forms
  for (const char* type : {"A2", "B2", "G2"}) {
    for (const bool catalan : {false, true}) {
      for (long m = 1; m <= 2; ++m) {
        std::ostringstream label;
        label << "Edelman-Reiner " << type << " " << (catalan ? "catalan" : "shi")
              << " m=" << m;
        criterion(4, label.str(), 60, [&](std::string& detail) {
          const auto d = root_system(type);
          const auto f = catalan ? FamilySpec::catalan(d, m) : FamilySpec::shi(d, m);
          const auto rep = verify_edelman_reiner(f);
          const auto data = exponent_data(d);
          // predicted chi_0 of the cone = product over the expected nontrivial
          // exponents, with the ambient t-padding stripped
          const TPoly tpow = TPoly::t_power(d.ambient - d.rank);
          const TPoly chi0 = *char_poly(build_family(f)).divide_exact(tpow);
          TPoly expected(1);
          if (catalan)
            for (long e : data.exponents)
              expected = expected * TPoly::linear_root(Integer(e + m * data.coxeter));
          else
            for (int i = 0; i < d.rank; ++i)
              expected = expected * TPoly::linear_root(Integer(m * data.coxeter));
          std::ostringstream ss;
          ss << "exponents (";
          for (size_t i = 0; i < rep.expected.size(); ++i)
            ss << (i ? "," : "") << rep.expected[i];
          ss << ")";
          detail = ss.str();
          return rep.pass && chi0 == expected;
        });
      }
    }
  }

  // rank-3 Edelman-Reiner through the high-rank criterion
  struct Rank3Case {
    const char* type;
    bool catalan;
    std::vector<long> exponents;
    std::vector<long> cert_degrees;
  };
  for (const Rank3Case& c : {Rank3Case{"A3", false, {1, 4, 4, 4}, {4, 4, 4}},
                             Rank3Case{"A3", true, {1, 5, 6, 7}, {5, 6, 7}},
                             Rank3Case{"B3", false, {1, 6, 6, 6}, {6, 6, 6}}}) {
    std::ostringstream label;
    label << "Edelman-Reiner " << c.type << " " << (c.catalan ? "catalan" : "shi")
          << " m=1 via locally-free + restriction";
    criterion(5, label.str(), 600, [&](std::string& detail) {
      const auto d = root_system(c.type);
      const auto f = c.catalan ? FamilySpec::catalan(d, 1) : FamilySpec::shi(d, 1);
      const auto rep = verify_edelman_reiner(f);
      bool ok = rep.pass && rep.expected == c.exponents;
      ok = ok && rep.freeness.evidence == "restriction-and-local-freeness";
      const Arrangement cone_arr = build_family_cone(f).cone;
      const auto cert = saito_certificate(ziegler_restriction(cone_arr, 0), c.cert_degrees);
      ok = ok && cert.has_value();
      const auto local = locally_free_along(cone_arr, 0);
      ok = ok && local.status == Verdict::Free && local.flats_checked > 0;
      std::ostringstream ss;
      ss << local.flats_checked << " flats in H_inf all localize free";
      detail = ss.str();
      return ok;
    });
  }

  criterion(6, "interpolating families for A2 and B2, all order ideals, m in {1,2}",
            300, [&](std::string& detail) {
              long cases = 0;
              for (const char* type : {"A2", "B2"}) {
                const auto d = root_system(type);
                const auto data = exponent_data(d);
                const int n = (int)d.positive_roots.size();
                for (long m = 1; m <= 2; ++m) {
                  for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    std::vector<int> ideal;
                    for (int i = 0; i < n; ++i)
                      if ((mask >> i) & 1) ideal.push_back(i);
                    if (!order_ideal_check(d, ideal)) continue;
                    const auto f = FamilySpec::interpolating(d, ideal, m);
                    const auto expected = expected_exponents(f);
                    const auto rep = decide_free(build_family_cone(f).cone, expected);
                    if (rep.verdict != Verdict::Free || rep.exponents != expected) {
                      detail = "freeness failed for an ideal of " + std::string(type);
                      return false;
                    }
                    Arrangement sub(d.ambient);
                    for (int r : ideal) {
                      Form form(d.ambient);
                      for (int i = 0; i < d.ambient; ++i)
                        form[i] = Rational(d.positive_roots[r][i]);
                      sub.add_form(std::move(form));
                    }
                    const TPoly tpow = TPoly::t_power(d.ambient - d.rank);
                    const TPoly lhs = *char_poly(build_family(f)).divide_exact(tpow);
                    const TPoly rhs = char_poly(sub).divide_exact(tpow)->compose_shift(
                        Integer(-m * data.coxeter));
                    if (!(lhs == rhs)) {
                      detail = "chi shift identity failed";
                      return false;
                    }
                    ++cases;
                  }
                }
              }
              detail = std::to_string(cases) + " (ideal, m) cases";
              return true;
            });

  const auto named = corpus();

  criterion(7, "Solomon-Terao limit equals chi for every certified-free corpus member",
            0, [&](std::string& detail) {
              long free_count = 0;
              for (const auto& [name, a] : named) {
                const auto rep = decide_free(a);
                if (rep.verdict != Verdict::Free) continue;
                ++free_count;
                if (!(solomon_terao_chi(FreeHilbertData(a.dim, rep.exponents)) ==
                      char_poly(a))) {
                  detail = "mismatch on " + name;
                  return false;
                }
              }
              detail = std::to_string(free_count) + " free members checked";
              return free_count >= 5;
            });

  criterion(8, "restriction Hilbert identity to degree #A+5", 0, [&](std::string& detail) {
    AffineArrangement a2aff(2);
    a2aff.add_hyperplane({Rational(1), Rational(0)}, Rational(0));
    a2aff.add_hyperplane({Rational(0), Rational(1)}, Rational(0));
    a2aff.add_hyperplane({Rational(1), Rational(-1)}, Rational(0));
    std::vector<Arrangement> cases{boolean_arrangement(3), cone(a2aff), stanley_cone()};
    std::mt19937 rng(0x811b);
    for (int i = 0; i < 10; ++i) cases.push_back(random_arrangement(rng, 3, 5 + (int)(rng() % 3)));
    long checked = 0;
    for (const auto& a : cases) {
      const auto rep = hilbformula_check(a, 0, a.size() + 5);
      if (!rep.pass) {
        detail = "identity failed on a " + std::to_string(a.size()) + "-arrangement";
        return false;
      }
      ++checked;
    }
    detail = std::to_string(checked) + " arrangements, exact agreement";
    return true;
  });

  criterion(9, "finite-field counting oracle on 3 good primes per corpus member", 0,
            [&](std::string& detail) {
              long checks = 0;
              for (const auto& [name, a] : named) {
                const auto lat = build_lattice(a);
                const TPoly chi = char_poly(lat);
                long found = 0;
                for (long p = 101; found < 3; ++p) {
                  if (!is_good_prime(a, lat, p)) continue;
                  ++found;
                  if (chi.eval(Integer(p)) != count_points_mod_p(a, p, &lat)) {
                    detail = "oracle mismatch on " + name + " at p=" + std::to_string(p);
                    return false;
                  }
                  ++checks;
                }
              }
              detail = std::to_string(checks) + " (arrangement, prime) checks";
              return true;
            });

  if (failures == 0) std::printf("all acceptance criteria passed\n");
  else std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
