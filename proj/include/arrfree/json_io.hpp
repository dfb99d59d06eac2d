#pragma once

#include <json.hpp>

#include "arrfree/freeness.hpp"
#include "arrfree/hilbert.hpp"
#include "arrfree/lattice.hpp"
#include "arrfree/logmod.hpp"
#include "arrfree/weyl.hpp"

namespace arrfree {

// JSON emission. nlohmann::json objects keep keys sorted, and rationals are
// printed through the canonical p/q form, so output bytes are deterministic
// for fixed inputs. Integer coefficients are emitted as numbers when they
// fit, as canonical strings otherwise.
using json = nlohmann::json;

inline json to_json(const Integer& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

inline json to_json(const TPoly& p) {
  json arr = json::array();
  for (const auto& c : p.c) arr.push_back(to_json(c));
  return arr;
}

inline json to_json(const Form& f) {
  json arr = json::array();
  for (const auto& q : f) arr.push_back(to_string(q));
  return arr;
}

inline json to_json(const Arrangement& a) {
  json j;
  j["dim"] = a.dim;
  j["forms"] = json::array();
  for (const auto& f : a.forms) j["forms"].push_back(to_json(f));
  if (a.infinity >= 0) j["infinity"] = a.infinity;
  return j;
}

inline json to_json(const Multiarrangement& m) {
  json j = to_json(m.base);
  j["mult"] = m.mult;
  j["mult_total"] = m.total_multiplicity();
  return j;
}

inline json to_json(const AffineArrangement& a) {
  json j;
  j["affine"] = true;
  j["dim"] = a.dim;
  j["forms"] = json::array();
  j["offsets"] = json::array();
  for (int i = 0; i < a.size(); ++i) {
    j["forms"].push_back(to_json(a.forms[i]));
    j["offsets"].push_back(to_string(a.offsets[i]));
  }
  return j;
}

inline json to_json(const IntersectionLattice& lat) {
  json j;
  j["dim"] = lat.dim;
  j["flats"] = json::array();
  for (long i = 0; i < lat.num_flats(); ++i) {
    json f;
    f["dim"] = lat.flats[i].dim;
    f["mobius"] = to_json(lat.mobius[i]);
    f["basis"] = json::array();
    for (long r = 0; r < lat.flats[i].basis.rows; ++r) {
      json row = json::array();
      for (long c = 0; c < lat.flats[i].basis.cols; ++c)
        row.push_back(to_string(lat.flats[i].basis.at(r, c)));
      f["basis"].push_back(row);
    }
    json idx = json::array();
    for (int h = 0; h < 64; ++h)
      if ((lat.flats[i].index_set >> h) & 1) idx.push_back(h);
    f["hyperplanes"] = idx;
    j["flats"].push_back(f);
  }
  return j;
}

inline json to_json(const FreenessCertificate& c) {
  json j;
  j["degrees"] = c.degrees;
  j["scalar"] = to_string(c.scalar);
  j["derivations"] = json::array();
  for (const auto& der : c.derivations) {
    json row = json::array();
    for (const auto& p : der) row.push_back(p.str());
    j["derivations"].push_back(row);
  }
  return j;
}

inline json to_json(const FreenessReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["evidence"] = r.evidence;
  if (r.verdict == Verdict::Free) j["exponents"] = r.exponents;
  if (!r.chi.is_zero()) j["chi"] = to_json(r.chi);
  if (!r.restriction_exponents.empty()) j["restriction_exponents"] = r.restriction_exponents;
  if (r.codim_closed_form >= 0) j["codim"] = r.codim_closed_form;
  if (r.hyperplane >= 0) j["hyperplane"] = r.hyperplane;
  if (r.restriction_certificate) j["certificate"] = to_json(*r.restriction_certificate);
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.sub_reports.empty()) {
    j["sub_reports"] = json::array();
    for (const auto& sub : r.sub_reports) j["sub_reports"].push_back(to_json(sub));
  }
  return j;
}

inline json to_json(const CodimSweep& s) {
  json j;
  j["codim"] = s.total;
  j["d2"] = s.d2p;
  j["d3"] = s.d3p;
  j["deficits"] = json::array();
  for (const auto& [d, v] : s.deficits) j["deficits"].push_back(json::array({d, v}));
  return j;
}

inline json to_json(const HilbFormulaReport& r) {
  json j;
  j["degree_bound"] = r.degree_bound;
  j["pass"] = r.pass;
  j["remainder_zero"] = r.remainder_zero;
  j["mismatches"] = json::array();
  for (const auto& [p, d, lhs, rhs] : r.mismatches)
    j["mismatches"].push_back(
        json{{"p", p}, {"degree", d}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}});
  return j;
}

inline json to_json(const ERReport& r) {
  json j;
  j["family"] = r.family;
  j["pass"] = r.pass;
  j["expected_exponents"] = r.expected;
  j["chi_match"] = r.chi_match;
  j["chi_affine"] = to_json(r.chi_affine);
  j["chi_expected"] = to_json(r.chi_expected);
  j["restriction_match"] = r.restriction_match;
  j["restriction_expected"] = r.restriction_expected;
  j["verdict_match"] = r.verdict_match;
  j["freeness"] = to_json(r.freeness);
  return j;
}

}  // namespace arrfree
