#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "arrfree/lattice.hpp"
#include "arrfree/logmod.hpp"

namespace arrfree {

enum class Verdict { Free, NotFree, Undetermined };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Free: return "free";
    case Verdict::NotFree: return "not-free";
    default: return "undetermined";
  }
}

// Decision report. "free" always carries exponents (padded with zeros up to
// the ambient dimension) and machine-checkable evidence; "not-free" carries
// a witness; "undetermined" only occurs at essential rank >= 4 when the
// certificate search fails without a disproof.
struct FreenessReport {
  Verdict verdict = Verdict::Undetermined;
  std::string evidence;
  std::vector<long> exponents;              // sorted, when free
  TPoly chi;                                // characteristic polynomial (essential part)
  std::vector<long> restriction_exponents;  // multiexponents used by the criterion
  long codim_closed_form = -1;              // rank 3: chi_0(0) - d2' d3'
  int hyperplane = -1;                      // restricting hyperplane used
  std::optional<FreenessCertificate> restriction_certificate;
  std::vector<FreenessReport> sub_reports;  // summands / localization witnesses
  std::string note;
};

namespace detail {

inline int thread_budget() {
  if (const char* env = std::getenv("ARRFREE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : (int)std::min(hw, 4u);
}

// Deterministic parallel map: results land by index regardless of schedule.
template <typename Fn>
void parallel_for(long count, Fn&& fn) {
  const int threads = std::min<long>(thread_budget(), count);
  if (threads <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next(0);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

FreenessReport decide_free(const Arrangement& a, const std::vector<long>& hint = {});

// ---------------------------------------------------------------------------
// Rank-3 criterion: A is free iff chi = (t-1)(t-d2')(t-d3') with (d2', d3')
// the multiexponents of the restriction to one (the first) hyperplane.
inline FreenessReport decide_free_rank3(const Arrangement& a, int h = 0) {
  if (a.dim != 3 || !is_essential(a))
    throw std::invalid_argument("rank-3 test requires an essential 3-arrangement");
  FreenessReport rep;
  rep.hyperplane = h;
  const auto exps = rank2_multiexponents(ziegler_restriction(a, h));
  rep.restriction_exponents = {exps.d1, exps.d2};
  rep.chi = char_poly(a);
  const TPoly chi0 = *rep.chi.divide_exact(TPoly::linear_root(Integer(1)));
  rep.codim_closed_form =
      to_long(chi0.eval(0) - Integer(exps.d1) * Integer(exps.d2));
  const TPoly expected = TPoly::from_roots({Integer(1), Integer(exps.d1), Integer(exps.d2)});
  if (rep.chi == expected) {
    rep.verdict = Verdict::Free;
    rep.evidence = "char-poly-match";
    rep.exponents = {1, exps.d1, exps.d2};
    std::sort(rep.exponents.begin(), rep.exponents.end());
  } else {
    rep.verdict = Verdict::NotFree;
    rep.evidence = "char-poly-mismatch";
    rep.note = "restriction multiexponents are not roots of chi";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Local freeness along a hyperplane: every flat X inside H_h with
// dim X >= 1 (excluding the center) must localize to a free arrangement;
// localizations are split into direct summands first.
struct LocalFreenessReport {
  Verdict status = Verdict::Free;  // Free = passes, NotFree = witnessed failure
  std::optional<Flat> witness;
  std::vector<FreenessReport> witness_reports;
  long flats_checked = 0;
};

inline LocalFreenessReport locally_free_along(const Arrangement& a, int h) {
  if (!is_essential(a)) throw std::invalid_argument("locally_free_along requires essential input");
  const IntersectionLattice lat = build_lattice(a);
  std::vector<const Flat*> flats;
  for (const Flat& x : lat.flats)
    if (x.dim >= 1 && x.dim < a.dim && (x.index_set >> h) & 1) flats.push_back(&x);

  LocalFreenessReport rep;
  rep.flats_checked = (long)flats.size();
  std::vector<FreenessReport> results(flats.size());
  detail::parallel_for((long)flats.size(), [&](long i) {
    results[i] = decide_free(localize(a, *flats[i]));
  });
  for (size_t i = 0; i < flats.size(); ++i) {
    if (results[i].verdict == Verdict::Free) continue;
    if (results[i].verdict == Verdict::NotFree) {
      rep.status = Verdict::NotFree;
      rep.witness = *flats[i];
      rep.witness_reports.push_back(results[i]);
      return rep;
    }
    rep.status = Verdict::Undetermined;
    rep.witness = *flats[i];
    rep.witness_reports.push_back(results[i]);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Rank >= 4 criterion: free iff the restricted multiarrangement is free
// (sought through a Saito certificate) and the arrangement is locally free
// along the restricting hyperplane. A found certificate whose degrees are
// not roots of chi disproves freeness outright.
namespace detail {

// Greedy minimal-degree search for restriction certificate degrees: collect
// derivations that stay independent over the polynomial ring, reading
// degrees off in increasing order, capped by the multiplicity total.
inline std::optional<std::vector<long>> greedy_certificate_degrees(const Multiarrangement& m) {
  const int r = m.base.dim;
  const long total = m.total_multiplicity();
  std::vector<std::vector<MPoly>> collected;
  std::vector<long> degrees;
  long degree_sum = 0;
  for (long d = 0; d <= total && (int)collected.size() < r; ++d) {
    const GradedBasis basis = derivation_space(m, d);
    for (const auto& cand : basis.elements) {
      if ((int)collected.size() == r) break;
      // S-independence via a nonzero maximal minor of the coefficient matrix
      std::vector<std::vector<MPoly>> stacked = collected;
      stacked.push_back(cand);
      bool independent = false;
      for (const auto& cols : p_subsets(r, (int)stacked.size())) {
        std::vector<std::vector<MPoly>> sq;
        for (const auto& row : stacked) {
          std::vector<MPoly> picked;
          for (int c : cols) picked.push_back(row[c]);
          sq.push_back(std::move(picked));
        }
        if (!determinant(sq).is_zero()) {
          independent = true;
          break;
        }
      }
      if (!independent) continue;
      collected.push_back(cand);
      degrees.push_back(d);
      degree_sum += d;
      if (degree_sum > total) return std::nullopt;  // cap exceeded, not a basis
    }
  }
  if ((int)collected.size() < r || degree_sum != total) return std::nullopt;
  return degrees;
}

}  // namespace detail

inline FreenessReport decide_free_highrank(const Arrangement& a, int h,
                                           const std::vector<long>& hint = {}) {
  if (a.dim < 4 || !is_essential(a))
    throw std::invalid_argument("high-rank test requires an essential arrangement of rank >= 4");
  FreenessReport rep;
  rep.hyperplane = h;
  rep.chi = char_poly(a);

  const Multiarrangement rest = ziegler_restriction(a, h);
  std::optional<std::vector<long>> degrees;
  if (!hint.empty()) {
    long s = 0;
    for (long d : hint) s += d;
    if ((int)hint.size() == rest.base.dim && s == rest.total_multiplicity()) degrees = hint;
  }
  if (!degrees) degrees = detail::greedy_certificate_degrees(rest);

  std::optional<FreenessCertificate> cert;
  if (degrees) cert = saito_certificate(rest, *degrees);
  if (!cert) {
    // no witness for the restriction; chi may still refuse to split
    const auto roots = integer_roots(rep.chi);
    if ((long)roots.size() < rep.chi.degree()) {
      rep.verdict = Verdict::NotFree;
      rep.evidence = "char-poly-mismatch";
      rep.note = "characteristic polynomial does not split over Z";
    } else {
      rep.verdict = Verdict::Undetermined;
      rep.evidence = "restriction-certificate-not-found";
    }
    return rep;
  }
  rep.restriction_exponents = cert->degrees;
  rep.restriction_certificate = cert;

  std::vector<Integer> roots{1};
  for (long d : cert->degrees) roots.push_back(Integer(d));
  if (!(rep.chi == TPoly::from_roots(roots))) {
    rep.verdict = Verdict::NotFree;
    rep.evidence = "char-poly-mismatch";
    rep.note = "restriction multiexponents are not roots of chi";
    return rep;
  }

  const LocalFreenessReport local = locally_free_along(a, h);
  if (local.status == Verdict::Free) {
    rep.verdict = Verdict::Free;
    rep.evidence = "restriction-and-local-freeness";
    rep.exponents = {1};
    for (long d : cert->degrees) rep.exponents.push_back(d);
    std::sort(rep.exponents.begin(), rep.exponents.end());
  } else {
    rep.verdict = local.status;
    rep.evidence = local.status == Verdict::NotFree ? "localization-witness"
                                                    : "local-freeness-undetermined";
    rep.sub_reports = local.witness_reports;
    if (local.witness) {
      std::string basis;
      for (long r = 0; r < local.witness->basis.rows; ++r) {
        basis += r ? "; " : "";
        for (long c = 0; c < local.witness->basis.cols; ++c)
          basis += (c ? " " : "") + to_string(local.witness->basis.at(r, c));
      }
      rep.note = (local.status == Verdict::NotFree
                      ? "non-free localization at the flat spanned by "
                      : "undetermined localization at the flat spanned by ") +
                 basis;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Recursive dispatcher: essentialize, split into matroid summands, decide
// each by rank, and merge exponents (zero-padded back to the ambient
// dimension).
inline FreenessReport decide_free(const Arrangement& a, const std::vector<long>& hint) {
  const auto ess = essentialize(a);
  FreenessReport rep;
  rep.chi = char_poly(a);

  if (ess.rank <= 2) {
    rep.verdict = Verdict::Free;
    rep.evidence = "rank<=2";
    if (ess.rank == 1) rep.exponents = {1};
    if (ess.rank == 2) rep.exponents = {1, (long)ess.arrangement.size() - 1};
  } else {
    const auto pieces = decompose(ess.arrangement);
    std::vector<long> merged;
    bool undetermined = false;
    std::vector<FreenessReport> subs;
    for (const auto& piece : pieces) {
      const auto piece_ess = essentialize(piece);
      FreenessReport sub;
      if (piece_ess.rank <= 2) {
        sub.verdict = Verdict::Free;
        sub.evidence = "rank<=2";
        sub.chi = char_poly(piece_ess.arrangement);
        if (piece_ess.rank == 1) sub.exponents = {1};
        if (piece_ess.rank == 2) sub.exponents = {1, (long)piece_ess.arrangement.size() - 1};
      } else if (piece_ess.rank == 3) {
        sub = decide_free_rank3(piece_ess.arrangement);
      } else {
        const std::vector<long>* piece_hint =
            (pieces.size() == 1 && (int)hint.size() == piece_ess.rank) ? &hint : nullptr;
        std::vector<long> rest_hint;
        if (piece_hint) {
          rest_hint = *piece_hint;
          auto it = std::find(rest_hint.begin(), rest_hint.end(), 1);
          if (it != rest_hint.end()) rest_hint.erase(it);
          else rest_hint.clear();
        }
        for (int h = 0; h < piece_ess.arrangement.size(); ++h) {
          sub = decide_free_highrank(piece_ess.arrangement, h, rest_hint);
          if (sub.verdict != Verdict::Undetermined) break;
        }
      }
      if (sub.verdict == Verdict::Undetermined) undetermined = true;
      else if (sub.verdict == Verdict::Free)
        merged.insert(merged.end(), sub.exponents.begin(), sub.exponents.end());
      subs.push_back(std::move(sub));
      if (subs.back().verdict == Verdict::NotFree) break;
    }
    if (pieces.size() == 1) {
      // a single summand speaks for the whole arrangement
      FreenessReport sub = std::move(subs[0]);
      sub.chi = std::move(rep.chi);
      if (sub.verdict == Verdict::Free) {
        for (int i = ess.rank; i < a.dim; ++i) sub.exponents.push_back(0);
        std::sort(sub.exponents.begin(), sub.exponents.end());
      }
      return sub;
    }
    rep.sub_reports = std::move(subs);
    if (rep.sub_reports.back().verdict == Verdict::NotFree) {
      rep.verdict = Verdict::NotFree;
      rep.evidence = "summand-not-free";
      return rep;
    }
    if (undetermined) {
      rep.verdict = Verdict::Undetermined;
      rep.evidence = "summand-undetermined";
      return rep;
    }
    rep.verdict = Verdict::Free;
    rep.evidence = "direct-sum";
    rep.exponents = std::move(merged);
  }

  if (rep.verdict == Verdict::Free) {
    for (int i = ess.rank; i < a.dim; ++i) rep.exponents.push_back(0);
    std::sort(rep.exponents.begin(), rep.exponents.end());
  }
  return rep;
}

}  // namespace arrfree
