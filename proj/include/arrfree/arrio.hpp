#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "arrfree/arrangement.hpp"

namespace arrfree {

// Arrangement text format, shared with the CLI.
//   dim <l>
//   c_1 c_2 ... c_l            central hyperplane
//   c_1 c_2 ... c_l | m        central hyperplane with multiplicity
//   c_1 c_2 ... c_l = c        affine hyperplane {v : form(v) = c}
// Entries are canonical rationals p/q. Lines starting with '#' are comments.
using ParsedArrangement = std::variant<Arrangement, Multiarrangement, AffineArrangement>;

inline ParsedArrangement parse_arrangement_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  int dim = -1;
  bool any_affine = false, any_central = false, any_mult = false;
  std::vector<Form> forms;
  std::vector<Rational> offsets;
  std::vector<long> mults;

  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (dim < 0) {
      if (tok.size() != 2 || tok[0] != "dim") fail("expected 'dim <l>' header");
      try {
        dim = std::stoi(tok[1]);
      } catch (...) {
        fail("bad dimension");
      }
      if (dim <= 0) fail("dimension must be positive");
      continue;
    }
    Form f;
    size_t i = 0;
    for (; i < tok.size() && tok[i] != "|" && tok[i] != "="; ++i) {
      try {
        f.push_back(parse_rational(tok[i]));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    if ((int)f.size() != dim) fail("expected " + std::to_string(dim) + " coefficients");
    Rational offset(0);
    long mult = 1;
    bool affine = false;
    if (i < tok.size()) {
      if (tok[i] == "=") {
        affine = true;
        if (i + 1 >= tok.size()) fail("missing offset after '='");
        try {
          offset = parse_rational(tok[i + 1]);
        } catch (const std::invalid_argument& e) {
          fail(e.what());
        }
        i += 2;
      } else {  // "|"
        if (i + 1 >= tok.size()) fail("missing multiplicity after '|'");
        try {
          mult = std::stol(tok[i + 1]);
        } catch (...) {
          fail("bad multiplicity");
        }
        if (mult < 0) fail("negative multiplicity");
        any_mult = true;
        i += 2;
      }
      if (i != tok.size()) fail("trailing tokens");
    }
    (affine ? any_affine : any_central) = true;
    if (any_affine && any_central) fail("mix of affine and central hyperplanes");
    if (any_affine && any_mult) fail("multiplicities on affine hyperplanes are not supported");
    forms.push_back(std::move(f));
    offsets.push_back(std::move(offset));
    mults.push_back(mult);
  }
  if (dim < 0) throw std::invalid_argument("line 1: missing 'dim <l>' header");

  lineno = 0;  // reported line numbers below are per-hyperplane, not file lines
  try {
    if (any_affine) {
      AffineArrangement a(dim);
      for (size_t k = 0; k < forms.size(); ++k)
        a.add_hyperplane(std::move(forms[k]), std::move(offsets[k]));
      return a;
    }
    if (any_mult) {
      Arrangement base(dim);
      for (auto& f : forms) base.add_form(std::move(f));
      return Multiarrangement(std::move(base), std::move(mults));
    }
    Arrangement a(dim);
    for (auto& f : forms) a.add_form(std::move(f));
    return a;
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("arrangement input: ") + e.what());
  }
}

inline std::string print_arrangement_text(const Arrangement& a) {
  std::string s = "dim " + std::to_string(a.dim) + "\n";
  for (const auto& f : a.forms) {
    for (size_t j = 0; j < f.size(); ++j) s += (j ? " " : "") + to_string(f[j]);
    s += "\n";
  }
  return s;
}

inline std::string print_arrangement_text(const Multiarrangement& m) {
  std::string s = "dim " + std::to_string(m.base.dim) + "\n";
  for (int i = 0; i < m.base.size(); ++i) {
    const auto& f = m.base.forms[i];
    for (size_t j = 0; j < f.size(); ++j) s += (j ? " " : "") + to_string(f[j]);
    s += " | " + std::to_string(m.mult[i]) + "\n";
  }
  return s;
}

inline std::string print_arrangement_text(const AffineArrangement& a) {
  std::string s = "dim " + std::to_string(a.dim) + "\n";
  for (int i = 0; i < a.size(); ++i) {
    const auto& f = a.forms[i];
    for (size_t j = 0; j < f.size(); ++j) s += (j ? " " : "") + to_string(f[j]);
    s += " = " + to_string(a.offsets[i]) + "\n";
  }
  return s;
}

}  // namespace arrfree
