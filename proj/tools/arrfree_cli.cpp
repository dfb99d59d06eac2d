// arrfree: exact freeness tests for hyperplane arrangements.
//
// Machine-readable JSON goes to stdout (deterministic bytes for fixed
// inputs); human summaries go to stderr. Exit codes: 0 success/PASS,
// 1 usage or input errors, 2 not-free/FAIL, 3 undetermined.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "arrfree/arrfree.hpp"
#include "arrfree/json_io.hpp"

namespace {

using namespace arrfree;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNegative = 2;
constexpr int kExitUndetermined = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParsedArrangement parse_file(const std::string& path) {
  return parse_arrangement_text(slurp(path));
}

// Central arrangement from any input kind; affine inputs are coned.
Arrangement load_central(const std::string& path, bool* coned = nullptr) {
  auto parsed = parse_file(path);
  if (coned) *coned = false;
  if (std::holds_alternative<Arrangement>(parsed)) return std::get<Arrangement>(parsed);
  if (std::holds_alternative<AffineArrangement>(parsed)) {
    if (coned) *coned = true;
    return cone(std::get<AffineArrangement>(parsed));
  }
  throw std::invalid_argument("this command expects a simple arrangement, not a multiarrangement");
}

Multiarrangement load_multi(const std::string& path) {
  auto parsed = parse_file(path);
  if (std::holds_alternative<Multiarrangement>(parsed)) return std::get<Multiarrangement>(parsed);
  if (std::holds_alternative<Arrangement>(parsed))
    return Multiarrangement(std::get<Arrangement>(parsed));
  throw std::invalid_argument("this command expects a central (multi)arrangement");
}

std::vector<long> parse_hint(const std::string& csv) {
  std::vector<long> out;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
  return out;
}

std::vector<int> parse_ideal(const std::string& csv) {
  std::vector<int> out;
  if (csv.empty()) return out;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

void write_out_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write output file: " + path);
  out << content;
}

FamilySpec family_from_options(const std::string& type, const std::string& family, long m,
                               const std::string& ideal_csv) {
  const RootSystemDesc desc = root_system(type);
  if (family == "weyl") return FamilySpec::weyl(desc);
  if (family == "shi") return FamilySpec::shi(desc, m);
  if (family == "catalan") return FamilySpec::catalan(desc, m);
  if (family == "interp")
    return FamilySpec::interpolating(desc, parse_ideal(ideal_csv), m);
  throw std::invalid_argument("unknown family: " + family + " (weyl|shi|catalan|interp)");
}

// Freeness verdict honoring an explicit restriction hyperplane when the
// essential rank makes that meaningful.
FreenessReport run_free(const Arrangement& a, int hyperplane, bool hyperplane_given,
                        const std::vector<long>& hint) {
  if (hyperplane_given) {
    const auto ess = essentialize(a);
    FreenessReport rep;
    if (ess.rank == 3) {
      rep = decide_free_rank3(ess.arrangement, hyperplane);
    } else if (ess.rank >= 4) {
      std::vector<long> rest_hint = hint;
      auto it = std::find(rest_hint.begin(), rest_hint.end(), 1);
      if (it != rest_hint.end()) rest_hint.erase(it);
      else rest_hint.clear();
      rep = decide_free_highrank(ess.arrangement, hyperplane, rest_hint);
    } else {
      return decide_free(a, hint);
    }
    if (rep.verdict == Verdict::Free) {
      for (int i = ess.rank; i < a.dim; ++i) rep.exponents.push_back(0);
      std::sort(rep.exponents.begin(), rep.exponents.end());
    }
    return rep;
  }
  return decide_free(a, hint);
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Free: return kExitOk;
    case Verdict::NotFree: return kExitNegative;
    default: return kExitUndetermined;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact freeness tests for hyperplane arrangements"};
  app.require_subcommand(1);

  std::string input, out_path, hint_csv, type, family = "shi", ideal_csv;
  int hyperplane = 0;
  long prime = 0, m = 1, degree_bound = -1;

  auto* cmd_charpoly = app.add_subcommand("charpoly", "characteristic polynomial");
  cmd_charpoly->add_option("input", input)->required();
  cmd_charpoly->add_option("--prime", prime, "cross-check with the point-count oracle mod p");

  auto* cmd_lattice = app.add_subcommand("lattice", "intersection lattice with Mobius values");
  cmd_lattice->add_option("input", input)->required();

  auto* cmd_restrict = app.add_subcommand("restrict", "Ziegler restriction to a hyperplane");
  cmd_restrict->add_option("input", input)->required();
  cmd_restrict->add_option("--hyperplane", hyperplane);
  cmd_restrict->add_option("--out", out_path, "also write the arrangement file format");

  auto* cmd_exp2 = app.add_subcommand("exp2", "multiexponents of a rank-2 multiarrangement");
  cmd_exp2->add_option("input", input)->required();

  auto* cmd_free = app.add_subcommand("free", "freeness decision");
  cmd_free->add_option("input", input)->required();
  auto* free_h = cmd_free->add_option("--hyperplane", hyperplane);
  cmd_free->add_option("--hint", hint_csv, "expected exponents d1,d2,...");

  auto* cmd_codim = app.add_subcommand("codim", "graded cokernel of the restriction map");
  cmd_codim->add_option("input", input)->required();
  cmd_codim->add_option("--hyperplane", hyperplane);

  auto* cmd_st = app.add_subcommand("st-check", "Solomon-Terao limit against the lattice");
  cmd_st->add_option("input", input)->required();

  auto* cmd_hilb = app.add_subcommand("hilb-check", "restriction Hilbert series identity");
  cmd_hilb->add_option("input", input)->required();
  cmd_hilb->add_option("--hyperplane", hyperplane);
  cmd_hilb->add_option("--degree-bound", degree_bound);

  auto* cmd_roots = app.add_subcommand("roots", "positive roots of a root system");
  cmd_roots->add_option("--type", type)->required();

  auto* cmd_family = app.add_subcommand("family", "build a deformation family");
  cmd_family->add_option("--type", type)->required();
  cmd_family->add_option("--family", family, "weyl|shi|catalan|interp");
  cmd_family->add_option("--m", m);
  cmd_family->add_option("--ideal", ideal_csv, "positive-root indices, comma separated");
  cmd_family->add_option("--out", out_path);

  auto* cmd_verify = app.add_subcommand("verify-er", "verify the Edelman-Reiner prediction");
  cmd_verify->add_option("--type", type)->required();
  cmd_verify->add_option("--family", family, "shi|catalan|interp");
  cmd_verify->add_option("--m", m);
  cmd_verify->add_option("--ideal", ideal_csv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_charpoly) {
      auto parsed = parse_file(input);
      json j;
      if (std::holds_alternative<AffineArrangement>(parsed)) {
        j["chi"] = to_json(char_poly(std::get<AffineArrangement>(parsed)));
      } else {
        const Arrangement a = std::holds_alternative<Arrangement>(parsed)
                                  ? std::get<Arrangement>(parsed)
                                  : std::get<Multiarrangement>(parsed).base;
        const TPoly chi = char_poly(a);
        j["chi"] = to_json(chi);
        if (prime > 0) {
          const Integer count = count_points_mod_p(a, prime);
          j["prime"] = prime;
          j["count_mod_p"] = to_json(count);
          j["chi_at_p"] = to_json(chi.eval(Integer(prime)));
          j["match"] = chi.eval(Integer(prime)) == count;
        }
      }
      emit(j);
      std::cerr << "chi computed\n";
      return kExitOk;
    }
    if (*cmd_lattice) {
      const Arrangement a = load_central(input);
      const auto lat = build_lattice(a);
      json j = to_json(lat);
      j["chi"] = to_json(char_poly(lat));
      emit(j);
      std::cerr << lat.num_flats() << " flats\n";
      return kExitOk;
    }
    if (*cmd_restrict) {
      const Arrangement a = load_central(input);
      const Multiarrangement rest = ziegler_restriction(a, hyperplane);
      json j = to_json(rest);
      j["hyperplane"] = hyperplane;
      if (!out_path.empty()) write_out_file(out_path, print_arrangement_text(rest));
      emit(j);
      std::cerr << "restriction has " << rest.base.size() << " hyperplanes, |k| = "
                << rest.total_multiplicity() << "\n";
      return kExitOk;
    }
    if (*cmd_exp2) {
      const Multiarrangement m0 = load_multi(input);
      const auto ess = essentialize(m0);
      if (ess.rank != 2) throw std::invalid_argument("exp2 requires essential rank 2");
      const auto exps = rank2_multiexponents(ess.arrangement);
      json j;
      j["exponents"] = json::array({exps.d1, exps.d2});
      j["certificate"] = to_json(exps.cert);
      emit(j);
      std::cerr << "multiexponents (" << exps.d1 << ", " << exps.d2 << ")\n";
      return kExitOk;
    }
    if (*cmd_free) {
      bool coned = false;
      const Arrangement a = load_central(input, &coned);
      if (coned) std::cerr << "affine input coned\n";
      const std::vector<long> hint = hint_csv.empty() ? std::vector<long>{} : parse_hint(hint_csv);
      const FreenessReport rep = run_free(a, hyperplane, free_h->count() > 0, hint);
      emit(to_json(rep));
      std::cerr << "verdict: " << to_string(rep.verdict) << "\n";
      return exit_code(rep.verdict);
    }
    if (*cmd_codim) {
      const Arrangement a0 = load_central(input);
      const auto ess = essentialize(a0);
      if (ess.rank != 3) throw std::invalid_argument("codim requires essential rank 3");
      const auto sweep = codim_restriction_sweep(ess.arrangement, hyperplane);
      json j = to_json(sweep);
      const TPoly chi0 = reduced_char_poly(ess.arrangement);
      j["closed_form"] = to_json(chi0.eval(0) - Integer(sweep.d2p) * Integer(sweep.d3p));
      j["hyperplane"] = hyperplane;
      emit(j);
      std::cerr << "codim " << sweep.total << "\n";
      return kExitOk;
    }
    if (*cmd_st) {
      const Arrangement a = load_central(input);
      const FreenessReport rep = decide_free(a);
      if (rep.verdict != Verdict::Free) {
        json j;
        j["verdict"] = to_string(rep.verdict);
        j["pass"] = false;
        emit(j);
        std::cerr << "not certified free, Solomon-Terao check skipped\n";
        return exit_code(rep.verdict);
      }
      const TPoly st = solomon_terao_chi(FreeHilbertData(a.dim, rep.exponents));
      const bool pass = st == rep.chi;
      json j;
      j["verdict"] = "free";
      j["exponents"] = rep.exponents;
      j["solomon_terao"] = to_json(st);
      j["chi"] = to_json(rep.chi);
      j["pass"] = pass;
      emit(j);
      std::cerr << (pass ? "PASS" : "FAIL") << "\n";
      return pass ? kExitOk : kExitNegative;
    }
    if (*cmd_hilb) {
      const Arrangement a0 = load_central(input);
      const auto ess = essentialize(a0);
      if (ess.rank != 3) throw std::invalid_argument("hilb-check requires essential rank 3");
      const long bound = degree_bound >= 0 ? degree_bound : ess.arrangement.size() + 5;
      const auto rep = hilbformula_check(ess.arrangement, hyperplane, bound);
      emit(to_json(rep));
      std::cerr << (rep.pass ? "PASS" : "FAIL") << " to degree " << bound << "\n";
      return rep.pass ? kExitOk : kExitNegative;
    }
    if (*cmd_roots) {
      const RootSystemDesc d = root_system(type);
      const auto data = exponent_data(d);
      json j;
      j["type"] = d.name;
      j["rank"] = d.rank;
      j["ambient"] = d.ambient;
      j["positive_roots"] = json::array();
      for (const auto& r : d.positive_roots) {
        json row = json::array();
        for (const auto& x : r) row.push_back(to_json(x));
        j["positive_roots"].push_back(row);
      }
      j["simple_indices"] = d.simple_indices;
      j["exponents"] = data.exponents;
      j["coxeter"] = data.coxeter;
      emit(j);
      std::cerr << d.positive_roots.size() << " positive roots\n";
      return kExitOk;
    }
    if (*cmd_family) {
      const FamilySpec f = family_from_options(type, family, m, ideal_csv);
      const AffineArrangement aff = build_family(f);
      json j = to_json(aff);
      j["family"] = family;
      j["type"] = type;
      j["m"] = m;
      if (!out_path.empty()) write_out_file(out_path, print_arrangement_text(aff));
      emit(j);
      std::cerr << aff.size() << " affine hyperplanes\n";
      return kExitOk;
    }
    if (*cmd_verify) {
      const FamilySpec f = family_from_options(type, family, m, ideal_csv);
      const ERReport rep = verify_edelman_reiner(f);
      emit(to_json(rep));
      std::cerr << (rep.pass ? "PASS" : "FAIL") << "\n";
      return rep.pass ? kExitOk : kExitNegative;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
