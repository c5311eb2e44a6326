#pragma once

#include "qw/sparse.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qw {

struct LieError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A basis symbol: family id within its presentation plus an index tuple.
/// The (family, idx) order is the global total order used everywhere.
struct BasisElem {
  int family = -1;
  std::vector<int> idx;

  friend auto operator<=>(const BasisElem&, const BasisElem&) = default;
};

using LieElement = SparseVec<BasisElem>;

/// One indexed generator family. Enumeration hooks are optional: graded
/// infinite families provide elems_with_grade, finite families provide
/// all_elems, and families whose non-ideal part is finite provide
/// non_ideal_elems (used to decide when the complement of p is finite).
struct Family {
  std::string name;
  int arity = 0;
  bool half_shift = false;  // printed index means stored index + 1/2
  std::string range_text;   // display form of the index range
  std::function<bool(const std::vector<int>&)> in_range;
  std::function<bool(const std::vector<int>&)> in_ideal;
  std::function<std::optional<long>(const std::vector<int>&)> grade;
  std::function<std::vector<std::vector<int>>(long)> elems_with_grade;
  std::function<std::vector<std::vector<int>>()> all_elems;
  std::function<std::vector<std::vector<int>>()> non_ideal_elems;
};

struct JacobiReport {
  bool ok = true;
  long checked = 0;
  std::optional<std::array<BasisElem, 3>> violation;
  std::string message;
};

struct IdealReport {
  bool ideal_ok = true;
  std::optional<std::pair<BasisElem, BasisElem>> ideal_violation;
  size_t pp_rank = 0;                       // rank of span [p,p] within the window
  std::vector<BasisElem> pp_pivots;         // echelon pivots of that span
  std::optional<BasisElem> nonperfect_witness;  // p-basis element outside span([p,p])
};

/// Immutable presentation of a Lie algebra: families plus a bracket oracle
/// for canonically ordered basis pairs, bilinearly and antisymmetrically
/// extended. Structure constants are exact rationals.
class LiePresentation {
 public:
  /// half_bracket(a, b) is consulted only for a < b (global order) and must
  /// return [a, b]; [b, a] is derived by antisymmetry, [a, a] = 0.
  using HalfBracket = std::function<LieElement(const BasisElem&, const BasisElem&)>;

  LiePresentation(std::string name, std::vector<Family> families, HalfBracket half_bracket,
                  std::map<std::string, Rational> params = {},
                  std::vector<std::string> rule_texts = {})
      : name_(std::move(name)),
        families_(std::move(families)),
        half_(std::move(half_bracket)),
        params_(std::move(params)),
        rule_texts_(std::move(rule_texts)) {
    for (int i = 0; i < static_cast<int>(families_.size()); ++i) {
      if (!family_ids_.emplace(families_[i].name, i).second)
        throw LieError("duplicate family name '" + families_[i].name + "'");
    }
  }

  const std::string& name() const { return name_; }
  const std::vector<Family>& families() const { return families_; }
  const std::map<std::string, Rational>& params() const { return params_; }
  const std::vector<std::string>& rule_texts() const { return rule_texts_; }

  Rational param(const std::string& key) const {
    auto it = params_.find(key);
    if (it == params_.end()) throw LieError(name_ + ": missing parameter '" + key + "'");
    return it->second;
  }

  int family_id(std::string_view fam) const {
    auto it = family_ids_.find(std::string(fam));
    if (it == family_ids_.end()) throw LieError(name_ + ": unknown family '" + std::string(fam) + "'");
    return it->second;
  }

  bool valid(const BasisElem& b) const {
    if (b.family < 0 || b.family >= static_cast<int>(families_.size())) return false;
    const Family& f = families_[b.family];
    return static_cast<int>(b.idx.size()) == f.arity && f.in_range(b.idx);
  }

  BasisElem elem(std::string_view fam, std::vector<int> idx = {}) const {
    BasisElem b{family_id(fam), std::move(idx)};
    if (!valid(b)) throw LieError(name_ + ": index outside declared range for " + elem_str(b));
    return b;
  }
  BasisElem elem(std::string_view fam, int i) const { return elem(fam, std::vector<int>{i}); }

  bool in_ideal(const BasisElem& b) const { return families_[b.family].in_ideal(b.idx); }

  std::optional<long> grade_of(const BasisElem& b) const {
    const Family& f = families_[b.family];
    if (!f.grade) return std::nullopt;
    return f.grade(b.idx);
  }

  bool graded() const {
    return std::all_of(families_.begin(), families_.end(),
                       [](const Family& f) { return static_cast<bool>(f.grade); });
  }

  bool finite_dimensional() const {
    return std::all_of(families_.begin(), families_.end(),
                       [](const Family& f) { return static_cast<bool>(f.all_elems); });
  }

  LieElement bracket(const BasisElem& a, const BasisElem& b) const {
    if (!valid(a)) throw LieError(name_ + ": index outside declared range for " + elem_str(a));
    if (!valid(b)) throw LieError(name_ + ": index outside declared range for " + elem_str(b));
    if (a == b) return {};
    LieElement out = (a < b) ? half_(a, b) : -half_(b, a);
    for (const auto& [t, c] : out.entries())
      if (!valid(t))
        throw LieError(name_ + ": bracket produced out-of-range element " + elem_str(t));
    return out;
  }

  LieElement bracket(const LieElement& u, const LieElement& v) const {
    LieElement out;
    for (const auto& [a, ca] : u.entries())
      for (const auto& [b, cb] : v.entries()) out.add_scaled(bracket(a, b), ca * cb);
    return out;
  }

  // ---- textual forms -------------------------------------------------

  /// Canonical machine form: "z", "L3", "L-2", "td(2,0,1)".
  std::string elem_str(const BasisElem& b) const {
    if (b.family < 0 || b.family >= static_cast<int>(families_.size())) return "<invalid>";
    const Family& f = families_[b.family];
    std::ostringstream os;
    os << f.name;
    if (f.arity == 1) {
      os << b.idx[0];
    } else if (f.arity > 1) {
      os << '(';
      for (size_t i = 0; i < b.idx.size(); ++i) os << (i ? "," : "") << b.idx[i];
      os << ')';
    }
    return os.str();
  }

  /// Human form; spells out the +1/2 index shift of half-shifted families.
  std::string pretty(const BasisElem& b) const {
    const Family& f = families_[b.family];
    if (f.arity == 1 && f.half_shift) {
      std::ostringstream os;
      os << f.name << '(' << 2 * b.idx[0] + 1 << "/2)";
      return os.str();
    }
    return elem_str(b);
  }

  std::string lie_str(const LieElement& v) const {
    if (v.zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, c] : v.entries()) {
      if (!first) os << " + ";
      first = false;
      if (c != 1) os << to_string(c) << '*';
      os << elem_str(b);
    }
    return os.str();
  }

  /// Parses the canonical machine form (longest family-name match wins).
  BasisElem parse_elem(std::string_view text) const {
    int best = -1;
    for (int i = 0; i < static_cast<int>(families_.size()); ++i) {
      const std::string& n = families_[i].name;
      if (text.substr(0, n.size()) == n &&
          (best < 0 || n.size() > families_[best].name.size()))
        best = i;
    }
    if (best < 0) throw LieError(name_ + ": no family matches element '" + std::string(text) + "'");
    const Family& f = families_[best];
    std::string_view rest = text.substr(f.name.size());
    std::vector<int> idx;
    if (f.arity == 0) {
      if (!rest.empty()) throw LieError(name_ + ": unexpected index on '" + std::string(text) + "'");
    } else if (f.arity == 1) {
      idx.push_back(parse_int(rest, text));
    } else {
      if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
        throw LieError(name_ + ": expected '" + f.name + "(i,...)' in '" + std::string(text) + "'");
      std::string body(rest.substr(1, rest.size() - 2));
      std::istringstream is(body);
      std::string part;
      while (std::getline(is, part, ',')) idx.push_back(parse_int(part, text));
    }
    return elem(f.name, std::move(idx));
  }

  // ---- enumeration ---------------------------------------------------

  std::vector<BasisElem> slice(long grade) const {
    std::vector<BasisElem> out;
    for (int i = 0; i < static_cast<int>(families_.size()); ++i) {
      const Family& f = families_[i];
      if (!f.elems_with_grade) continue;
      for (auto& idx : f.elems_with_grade(grade)) out.push_back({i, std::move(idx)});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// All basis elements (finite presentations) or the |grade| <= bound part.
  std::vector<BasisElem> window_elems(long bound) const {
    std::vector<BasisElem> out;
    if (finite_dimensional()) {
      for (int i = 0; i < static_cast<int>(families_.size()); ++i)
        for (auto& idx : families_[i].all_elems()) out.push_back({i, std::move(idx)});
      std::sort(out.begin(), out.end());
      return out;
    }
    if (!graded()) throw LieError(name_ + ": no window enumeration (ungraded, infinite)");
    for (long d = -bound; d <= bound; ++d) {
      auto s = slice(d);
      out.insert(out.end(), s.begin(), s.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<BasisElem> ideal_window(long bound) const {
    auto all = window_elems(bound);
    std::erase_if(all, [&](const BasisElem& b) { return !in_ideal(b); });
    return all;
  }

  std::optional<std::vector<BasisElem>> complement_if_finite() const {
    std::vector<BasisElem> out;
    for (int i = 0; i < static_cast<int>(families_.size()); ++i) {
      const Family& f = families_[i];
      if (!f.non_ideal_elems) return std::nullopt;
      for (auto& idx : f.non_ideal_elems()) out.push_back({i, std::move(idx)});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // ---- structure validation -------------------------------------------

  JacobiReport check_jacobi(long window, int samples, unsigned seed = 9001) const {
    JacobiReport rep;
    auto pool = window_elems(window);
    if (pool.empty()) {
      rep.message = "empty basis window";
      return rep;
    }
    auto check = [&](const BasisElem& a, const BasisElem& b, const BasisElem& c) {
      LieElement j = bracket(bracket(a, b), LieElement::unit(c));
      j += bracket(bracket(b, c), LieElement::unit(a));
      j += bracket(bracket(c, a), LieElement::unit(b));
      ++rep.checked;
      if (!j.zero()) {
        rep.ok = false;
        rep.violation = {a, b, c};
        rep.message = "jacobi violation at (" + elem_str(a) + ", " + elem_str(b) + ", " +
                      elem_str(c) + "): residual " + lie_str(j);
        return false;
      }
      return true;
    };
    long n = static_cast<long>(pool.size());
    if (n * n * n <= static_cast<long>(samples)) {
      for (const auto& a : pool)
        for (const auto& b : pool)
          for (const auto& c : pool)
            if (!check(a, b, c)) return rep;
      rep.message = "exhaustive over " + std::to_string(n) + " basis elements";
      return rep;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (int s = 0; s < samples; ++s)
      if (!check(pool[pick(rng)], pool[pick(rng)], pool[pick(rng)])) return rep;
    rep.message = std::to_string(samples) + " sampled triples in window " + std::to_string(window);
    return rep;
  }

  IdealReport check_ideal(long window) const {
    IdealReport rep;
    auto pool = window_elems(window);
    std::vector<BasisElem> ppool;
    for (const auto& b : pool)
      if (in_ideal(b)) ppool.push_back(b);
    for (const auto& g : pool) {
      for (const auto& p : ppool) {
        LieElement br = bracket(g, p);
        for (const auto& [t, c] : br.entries()) {
          if (!in_ideal(t)) {
            rep.ideal_ok = false;
            rep.ideal_violation = {g, p};
            return rep;
          }
        }
      }
    }
    RrefBasis<BasisElem> span;
    for (size_t i = 0; i < ppool.size(); ++i)
      for (size_t j = i + 1; j < ppool.size(); ++j) {
        LieElement br = bracket(ppool[i], ppool[j]);
        if (!br.zero()) span.insert(br);
      }
    rep.pp_rank = span.rank();
    for (const auto& [pivot, row] : span.rows()) rep.pp_pivots.push_back(pivot);
    for (const auto& p : ppool) {
      if (!span.reduce(LieElement::unit(p)).zero()) {
        rep.nonperfect_witness = p;
        break;
      }
    }
    return rep;
  }

 private:
  static int parse_int(std::string_view text, std::string_view whole) {
    size_t i = 0;
    while (i < text.size() && (text[i] == ' ')) ++i;
    size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    size_t digits = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i, ++digits;
    while (i < text.size() && text[i] == ' ') ++i;
    if (digits == 0 || i != text.size())
      throw LieError("bad integer index in '" + std::string(whole) + "'");
    return std::stoi(std::string(text.substr(start)));
  }

  std::string name_;
  std::vector<Family> families_;
  HalfBracket half_;
  std::map<std::string, Rational> params_;
  std::vector<std::string> rule_texts_;
  std::map<std::string, int> family_ids_;
};

}  // namespace qw
