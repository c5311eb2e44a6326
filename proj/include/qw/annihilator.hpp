#pragma once

#include "qw/phi.hpp"

#include <set>

namespace qw {

enum class Verdict { Irreducible, Reducible, WindowInconclusive, PreconditionFailed };

inline const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Irreducible: return "irreducible";
    case Verdict::Reducible: return "reducible";
    case Verdict::WindowInconclusive: return "window-inconclusive";
    case Verdict::PreconditionFailed: return "precondition-failed";
  }
  return "?";
}

/// Exact: every constraint outside the derived window vanishes identically
/// (finite-support phi over a graded or finite presentation), so computed
/// annihilator elements are genuine. WindowVerified: rule-based phi, the
/// conditions were checked on a finite window only.
enum class Regime { Exact, WindowVerified };

inline const char* regime_str(Regime r) {
  return r == Regime::Exact ? "exact" : "window-verified";
}

struct Window {
  long candidate = 8;
  std::optional<long> constraint;
};

struct AnnihilatorReport {
  Window window;
  Regime regime = Regime::Exact;
  bool complete = false;  // candidates cover the whole complement of p
  std::vector<BasisElem> candidates;
  std::vector<BasisElem> constraints;
  std::vector<LieElement> y_basis;
  std::vector<BasisElem> y_markers;  // free column per y vector
  std::optional<size_t> a_phi_rank;
  size_t a_phi_rows = 0, a_phi_cols = 0;
  Verdict verdict = Verdict::WindowInconclusive;
  std::optional<LieElement> witness;
  std::string caveat;
};

namespace detail {

/// Ideal elements whose bracket with a generator at one of the given grades
/// can meet supp phi. Complete for finite-support phi: everything else pairs
/// to zero identically.
inline std::vector<BasisElem> exact_constraints(const LiePresentation& pres, const PhiMap& phi,
                                                const std::set<long>& other_grades) {
  if (pres.finite_dimensional()) return pres.ideal_window(0);
  std::set<long> need;
  for (long s : phi.support_grades())
    for (long d : other_grades) need.insert(s - d);
  std::vector<BasisElem> out;
  for (long g : need)
    for (const auto& b : pres.slice(g))
      if (pres.in_ideal(b)) out.push_back(b);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// The p-side test phi([candidate, p]) = 0, over the derived constraint set
/// (finite-support phi) or a declared window (rule-based phi).
inline bool membership(const LiePresentation& pres, const PhiMap& phi, const LieElement& cand,
                       std::optional<long> window = std::nullopt) {
  if (cand.zero()) return true;
  std::vector<BasisElem> qs;
  if (phi.finite_support() && (pres.finite_dimensional() || pres.graded())) {
    std::set<long> grades;
    if (!pres.finite_dimensional())
      for (const auto& [b, c] : cand.entries()) grades.insert(*pres.grade_of(b));
    qs = detail::exact_constraints(pres, phi, grades);
  } else {
    qs = pres.ideal_window(window.value_or(12));
  }
  for (const auto& q : qs)
    if (phi(pres.bracket(cand, LieElement::unit(q))) != 0) return false;
  return true;
}

/// Computes the Whittaker annihilator within a window: one linear condition
/// per constraint element over the candidate coordinates; the nullspace,
/// restricted to the non-ideal candidates, is the y-basis completing the
/// x/y/p basis split.
inline AnnihilatorReport compute_annihilator(const LiePresentation& pres, const PhiMap& phi,
                                             Window window = {}) {
  AnnihilatorReport rep;
  rep.window = window;

  auto cf = pres.complement_if_finite();
  if (cf) {
    rep.candidates = *cf;
    rep.complete = true;
  } else {
    rep.candidates = pres.window_elems(window.candidate);
    std::erase_if(rep.candidates, [&](const BasisElem& b) { return pres.in_ideal(b); });
  }

  if (phi.finite_support() && (pres.finite_dimensional() || pres.graded())) {
    rep.regime = Regime::Exact;
    std::set<long> grades;
    if (!pres.finite_dimensional())
      for (const auto& b : rep.candidates) grades.insert(*pres.grade_of(b));
    rep.constraints = detail::exact_constraints(pres, phi, grades);
    if (window.constraint) {
      long need = 0;
      for (const auto& q : rep.constraints)
        if (auto g = pres.grade_of(q)) need = std::max(need, std::abs(*g));
      if (*window.constraint < need)
        throw LieError(pres.name() + ": constraint window " + std::to_string(*window.constraint) +
                       " does not cover the supp-phi interactions; enlarge to at least " +
                       std::to_string(need));
    }
  } else {
    rep.regime = Regime::WindowVerified;
    long bound = window.constraint.value_or(window.candidate + 4);
    rep.constraints = pres.ideal_window(bound);
    rep.caveat = "conditions verified for constraint |grade| <= " + std::to_string(bound) +
                 " only (rule-based phi)";
  }

  RrefBasis<BasisElem> rref;
  size_t rows = 0;
  for (const auto& q : rep.constraints) {
    SparseVec<BasisElem> row;
    for (const auto& c : rep.candidates) {
      Rational v = phi(pres.bracket(c, q));
      if (v != 0) row.add(c, v);
    }
    if (!row.zero()) {
      ++rows;
      rref.insert(std::move(row));
    }
  }
  rep.a_phi_rows = rows;
  rep.a_phi_cols = rep.candidates.size();
  if (rep.complete) rep.a_phi_rank = rref.rank();

  for (const BasisElem& c : rep.candidates) {
    if (rref.has_pivot(c)) continue;
    LieElement v = LieElement::unit(c);
    for (const auto& [p, row] : rref.rows()) v.add(p, -row.coeff(c));
    rep.y_markers.push_back(c);
    rep.y_basis.push_back(std::move(v));
  }

  if (rep.regime == Regime::WindowVerified) {
    rep.verdict = Verdict::WindowInconclusive;
  } else if (!rep.y_basis.empty()) {
    rep.verdict = Verdict::Reducible;
    rep.witness = rep.y_basis.front();
  } else {
    rep.verdict = rep.complete ? Verdict::Irreducible : Verdict::WindowInconclusive;
  }
  return rep;
}

struct RankResult {
  SparseMatrix<BasisElem> a_phi;
  std::vector<BasisElem> constraints;
  size_t rank = 0;
  size_t t = 0;
  bool irreducible = false;
};

/// Finite-complement rank test: A_phi has entry phi([g_j, p_k]) and the
/// module is irreducible iff rank A_phi equals dim(g/p).
inline RankResult rank_criterion(const LiePresentation& pres, const PhiMap& phi) {
  auto cf = pres.complement_if_finite();
  if (!cf)
    throw LieError(pres.name() +
                   ": the complement of p is not finite-dimensional; use compute_annihilator");
  RankResult out;
  out.a_phi.columns = *cf;
  out.t = cf->size();
  if (phi.finite_support() && (pres.finite_dimensional() || pres.graded())) {
    std::set<long> grades;
    if (!pres.finite_dimensional())
      for (const auto& b : *cf) grades.insert(*pres.grade_of(b));
    out.constraints = detail::exact_constraints(pres, phi, grades);
  } else if (pres.finite_dimensional()) {
    out.constraints = pres.ideal_window(0);
  } else {
    throw LieError(pres.name() + ": rank criterion needs finite-support phi here");
  }
  for (const auto& q : out.constraints) {
    SparseVec<BasisElem> row;
    for (const auto& c : out.a_phi.columns) {
      Rational v = phi(pres.bracket(c, q));
      if (v != 0) row.add(c, v);
    }
    if (!row.zero()) out.a_phi.rows.push_back(std::move(row));
  }
  out.rank = rank(out.a_phi);
  out.irreducible = out.rank == out.t;
  return out;
}

struct ExtendReport {
  bool extendable = true;
  std::optional<LieElement> violating_element;               // in span([g^phi,g^phi]) cap p
  std::optional<std::pair<LieElement, LieElement>> violating_pair;
};

/// Extendability of phi to g^phi: brackets of (y-basis union p-window),
/// intersected with p, must lie in ker phi.
inline ExtendReport is_extendable(const LiePresentation& pres, const PhiMap& phi,
                                  const AnnihilatorReport& rep) {
  std::vector<LieElement> gens;
  for (const auto& y : rep.y_basis) gens.push_back(y);
  for (const auto& q : rep.constraints) gens.push_back(LieElement::unit(q));

  ExtendReport out;
  using K = std::pair<int, BasisElem>;  // non-ideal block sorts before the ideal block
  RrefBasis<K> span;
  for (size_t i = 0; i < gens.size(); ++i) {
    for (size_t j = i + 1; j < gens.size(); ++j) {
      LieElement br = pres.bracket(gens[i], gens[j]);
      if (br.zero()) continue;
      bool all_ideal = true;
      for (const auto& [b, c] : br.entries())
        if (!pres.in_ideal(b)) all_ideal = false;
      if (all_ideal && phi(br) != 0) {
        out.extendable = false;
        out.violating_element = br;
        out.violating_pair = {gens[i], gens[j]};
        return out;
      }
      SparseVec<K> w;
      for (const auto& [b, c] : br.entries()) w.add({pres.in_ideal(b) ? 1 : 0, b}, c);
      span.insert(std::move(w));
    }
  }
  // rows pivoted in the ideal block have no non-ideal coordinates and span
  // the intersection of the bracket span with p
  for (const auto& [pivot, row] : span.rows()) {
    if (pivot.first != 1) continue;
    LieElement v;
    for (const auto& [k, c] : row.entries()) v.add(k.second, c);
    if (phi(v) != 0) {
      out.extendable = false;
      out.violating_element = v;
      return out;
    }
  }
  return out;
}

}  // namespace qw
