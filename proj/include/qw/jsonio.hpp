#pragma once

#include "qw/algebra_file.hpp"
#include "qw/criteria.hpp"
#include "qw/module.hpp"

#include <json.hpp>

#include <fstream>

namespace qw {

using Json = nlohmann::ordered_json;

inline Json to_json(const LiePresentation& pres, const LieElement& v) {
  Json out = Json::array();
  for (const auto& [b, c] : v.entries()) out.push_back({pres.elem_str(b), to_string(c)});
  return out;
}

inline Json to_json(const ModuleContext& ctx, const PBWVector& v) {
  Json out = Json::array();
  for (const auto& [m, c] : v.entries()) out.push_back({ctx.mono_str(m), to_string(c)});
  return out;
}

inline Json to_json(const LiePresentation& pres, const PhiMap& phi) {
  Json out;
  Json a = Json::array();
  for (const auto& [b, c] : phi.assignments()) a.push_back({pres.elem_str(b), to_string(c)});
  out["assignments"] = std::move(a);
  if (phi.rule()) {
    out["rule"] = {{"family", pres.families()[phi.rule()->family].name},
                   {"expr", phi.rule()->expr.text()}};
  } else {
    out["rule"] = nullptr;
  }
  return out;
}

inline Json to_json(const LiePresentation& pres, const AnnihilatorReport& rep,
                    const ExtendReport* ext = nullptr) {
  Json out;
  out["window"] = {{"candidate", rep.window.candidate},
                   {"constraint", rep.window.constraint ? Json(*rep.window.constraint) : Json()}};
  out["regime"] = regime_str(rep.regime);
  out["complete"] = rep.complete;
  Json cands = Json::array();
  for (const auto& c : rep.candidates) cands.push_back(pres.elem_str(c));
  out["candidates"] = std::move(cands);
  out["constraint_count"] = rep.constraints.size();
  Json ys = Json::array();
  for (const auto& y : rep.y_basis) ys.push_back(to_json(pres, y));
  out["y_basis"] = std::move(ys);
  Json ms = Json::array();
  for (const auto& m : rep.y_markers) ms.push_back(pres.elem_str(m));
  out["y_markers"] = std::move(ms);
  if (rep.a_phi_rank)
    out["a_phi"] = {{"rank", *rep.a_phi_rank}, {"rows", rep.a_phi_rows}, {"cols", rep.a_phi_cols}};
  else
    out["a_phi"] = nullptr;
  if (pres.graded()) {
    // degree-slice view of the candidate window and the pinned markers
    std::map<long, std::pair<int, int>> slices;
    for (const auto& c : rep.candidates) slices[*pres.grade_of(c)].first++;
    for (const auto& m : rep.y_markers) slices[*pres.grade_of(m)].second++;
    Json sl = Json::array();
    for (const auto& [g, counts] : slices)
      sl.push_back({{"grade", g}, {"candidates", counts.first}, {"free", counts.second}});
    out["slices"] = std::move(sl);
  }
  out["verdict"] = verdict_str(rep.verdict);
  out["witness"] = rep.witness ? to_json(pres, *rep.witness) : Json();
  out["caveat"] = rep.caveat;
  if (ext) {
    Json e;
    e["extendable"] = ext->extendable;
    e["violating_element"] =
        ext->violating_element ? to_json(pres, *ext->violating_element) : Json();
    if (ext->violating_pair)
      e["violating_pair"] = Json::array({to_json(pres, ext->violating_pair->first),
                                         to_json(pres, ext->violating_pair->second)});
    else
      e["violating_pair"] = nullptr;
    out["extendability"] = std::move(e);
  }
  return out;
}

inline Json to_json(const LiePresentation& pres, const CriterionResult& res) {
  Json out;
  out["verdict"] = verdict_str(res.verdict);
  out["witness"] = res.witness ? to_json(pres, *res.witness) : Json();
  if (res.recurrence) {
    Json coeffs = Json::array();
    for (const auto& c : res.recurrence->coeffs) coeffs.push_back(to_string(c));
    out["recurrence"] = {{"order", res.recurrence->order}, {"coeffs", std::move(coeffs)}};
  } else {
    out["recurrence"] = nullptr;
  }
  out["detail"] = res.detail;
  return out;
}

// ---- input parsing ---------------------------------------------------------

/// Inline phi: comma-separated ELEM=RATIONAL, e.g. "I0=1,I1=-2/3".
inline std::map<BasisElem, Rational> parse_phi_inline(const LiePresentation& pres,
                                                      const std::string& text) {
  std::map<BasisElem, Rational> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    // tuple indices contain commas: rejoin until the '=' shows up
    while (item.find('=') == std::string::npos) {
      std::string more;
      if (!std::getline(is, more, ',')) break;
      item += "," + more;
    }
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw FormatError("bad phi entry '" + item + "' (expected ELEM=RATIONAL)");
    std::string elem = item.substr(0, eq);
    elem.erase(0, elem.find_first_not_of(" \t"));
    elem.erase(elem.find_last_not_of(" \t") + 1);
    out[pres.parse_elem(elem)] = parse_rational(item.substr(eq + 1));
  }
  return out;
}

/// Phi spec file: {"assignments": [{"elem": "...", "value": "..."}],
///                 "rule": {"family": "...", "expr": "..."}} (rule optional).
inline PhiMap load_phi_json(const LiePresentation& pres, const Json& j, long window = 8) {
  std::map<BasisElem, Rational> assignments;
  if (j.contains("assignments"))
    for (const auto& a : j.at("assignments"))
      assignments[pres.parse_elem(a.at("elem").get<std::string>())] =
          parse_rational(a.at("value").get<std::string>());
  std::optional<PhiRule> rule;
  if (j.contains("rule") && !j.at("rule").is_null()) {
    rule = PhiRule{pres.family_id(j.at("rule").at("family").get<std::string>()),
                   Expr::parse(j.at("rule").at("expr").get<std::string>())};
  }
  return make_phi(pres, std::move(assignments), std::move(rule), window);
}

inline PhiMap load_phi_file(const LiePresentation& pres, const std::string& path,
                            long window = 8) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open phi file '" + path + "'");
  Json j;
  in >> j;
  return load_phi_json(pres, j, window);
}

/// Vector literal: '+'-separated terms, each [RATIONAL '*'] FACTORS, factor =
/// ELEM['^'INT] or the trailing symbol w. Example: "L-1*L-2*w + 2/3*L-1^2*w".
inline PBWVector parse_vector_literal(const ModuleContext& ctx, const std::string& text) {
  const LiePresentation& pres = ctx.pres();
  PBWVector out;
  int depth = 0;
  std::vector<std::string> terms;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '+' && depth == 0) {
      terms.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (cur.find_first_not_of(" \t") != std::string::npos) terms.push_back(cur);
  for (auto& term : terms) {
    Rational coeff(1);
    PBWMonomial mono;
    int depth2 = 0;
    std::vector<std::string> factors;
    std::string f;
    for (char c : term) {
      if (c == '(') ++depth2;
      if (c == ')') --depth2;
      if (c == '*' && depth2 == 0) {
        factors.push_back(f);
        f.clear();
      } else {
        f.push_back(c);
      }
    }
    if (f.find_first_not_of(" \t") != std::string::npos) factors.push_back(f);
    for (auto& raw : factors) {
      std::string fac = raw;
      fac.erase(0, fac.find_first_not_of(" \t"));
      fac.erase(fac.find_last_not_of(" \t") + 1);
      if (fac.empty()) continue;
      if (fac == "w") continue;
      if (std::isdigit(static_cast<unsigned char>(fac[0])) || fac[0] == '-' || fac[0] == '+') {
        coeff *= parse_rational(fac);
        continue;
      }
      int exp = 1;
      size_t caret = fac.rfind('^');
      size_t close = fac.rfind(')');
      if (caret != std::string::npos && (close == std::string::npos || caret > close)) {
        exp = std::stoi(fac.substr(caret + 1));
        fac = fac.substr(0, caret);
      }
      BasisElem b = pres.parse_elem(fac);
      switch (ctx.classify(b)) {
        case Tier::X:
          mono.x.bump(b, exp);
          break;
        case Tier::Y: {
          // address the y generator through its marker element
          for (int j = 0; j < ctx.y_count(); ++j)
            if (ctx.report().y_markers[static_cast<size_t>(j)] == b) mono.y.bump(j, exp);
          break;
        }
        case Tier::P:
          throw FormatError("'" + fac + "' lies in the ideal; it is not a basis factor");
      }
    }
    out.add(mono, coeff);
  }
  return out;
}

}  // namespace qw
