#pragma once

#include "qw/expr.hpp"
#include "qw/lie.hpp"

#include <set>

namespace qw {

struct PhiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Closed-form values on one family: expr in the index components, bound as
/// i1..ik (arity-1 families also bind the aliases n, m and i).
struct PhiRule {
  int family = -1;
  Expr expr;
};

/// A Lie algebra homomorphism p -> Q, given by finitely many assignments on
/// ideal basis elements plus an optional closed-form rule. Construct through
/// make_phi, which verifies the homomorphism condition.
class PhiMap {
 public:
  PhiMap() = default;
  PhiMap(const LiePresentation* pres, std::map<BasisElem, Rational> assignments,
         std::optional<PhiRule> rule)
      : pres_(pres), assign_(std::move(assignments)), rule_(std::move(rule)) {}

  const LiePresentation& pres() const { return *pres_; }
  bool finite_support() const { return !rule_.has_value(); }
  const std::map<BasisElem, Rational>& assignments() const { return assign_; }
  const std::optional<PhiRule>& rule() const { return rule_; }

  Rational operator()(const BasisElem& b) const {
    auto it = assign_.find(b);
    if (it != assign_.end()) return it->second;
    if (rule_ && b.family == rule_->family) {
      Expr::Env env;
      for (size_t i = 0; i < b.idx.size(); ++i)
        env["i" + std::to_string(i + 1)] = Rational(b.idx[i]);
      if (b.idx.size() == 1) {
        env["n"] = Rational(b.idx[0]);
        env["m"] = Rational(b.idx[0]);
        env["i"] = Rational(b.idx[0]);
      }
      return rule_->expr.eval(env);
    }
    return Rational(0);
  }

  Rational operator()(const LieElement& v) const {
    Rational acc(0);
    for (const auto& [b, c] : v.entries()) acc += c * (*this)(b);
    return acc;
  }

  /// Grades carrying support (finite-support phi over a graded presentation).
  std::set<long> support_grades() const {
    std::set<long> out;
    for (const auto& [b, c] : assign_) {
      auto g = pres_->grade_of(b);
      if (!g) throw PhiError("support element " + pres_->elem_str(b) + " carries no grading");
      out.insert(*g);
    }
    return out;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, c] : assign_) {
      if (!first) os << ',';
      first = false;
      os << pres_->elem_str(b) << '=' << to_string(c);
    }
    if (rule_) {
      if (!first) os << ',';
      os << pres_->families()[rule_->family].name << "~" << rule_->expr.text();
    }
    return os.str();
  }

 private:
  const LiePresentation* pres_ = nullptr;
  std::map<BasisElem, Rational> assign_;
  std::optional<PhiRule> rule_;
};

/// Builds and validates a homomorphism phi: p -> Q.
///
/// Checks: every assigned element lies in the ideal and in range; phi is not
/// identically zero; and phi vanishes on [p, p]. The [p,p] check is exact for
/// finite-dimensional presentations; for graded ones it runs over all ideal
/// pairs within the validation window whose bracket can meet the support
/// (grade sum in the support grades when the support is finite, every window
/// pair otherwise).
inline PhiMap make_phi(const LiePresentation& pres, std::map<BasisElem, Rational> assignments,
                       std::optional<PhiRule> rule = std::nullopt, long validation_window = 8) {
  for (auto it = assignments.begin(); it != assignments.end();) {
    if (!pres.valid(it->first))
      throw PhiError(pres.name() + ": assignment on invalid element " + pres.elem_str(it->first));
    if (!pres.in_ideal(it->first))
      throw PhiError(pres.name() + ": phi may only take values on the ideal; got " +
                     pres.elem_str(it->first));
    if (it->second == 0)
      it = assignments.erase(it);
    else
      ++it;
  }
  PhiMap phi(&pres, std::move(assignments), std::move(rule));

  std::vector<BasisElem> ppool = pres.finite_dimensional()
                                     ? pres.ideal_window(0)
                                     : pres.ideal_window(validation_window);
  bool nonzero = !phi.assignments().empty();
  if (!nonzero && phi.rule()) {
    for (const auto& p : ppool)
      if (phi(p) != 0) {
        nonzero = true;
        break;
      }
  }
  if (!nonzero) throw PhiError(pres.name() + ": phi must be nonzero");

  std::optional<std::set<long>> degsupp;
  if (phi.finite_support() && pres.graded()) degsupp = phi.support_grades();
  for (size_t i = 0; i < ppool.size(); ++i) {
    for (size_t j = i + 1; j < ppool.size(); ++j) {
      if (degsupp) {
        long g = *pres.grade_of(ppool[i]) + *pres.grade_of(ppool[j]);
        if (!degsupp->count(g)) continue;
      }
      LieElement br = pres.bracket(ppool[i], ppool[j]);
      if (br.zero()) continue;
      Rational v = phi(br);
      if (v != 0)
        throw PhiError(pres.name() + ": phi([" + pres.elem_str(ppool[i]) + "," +
                       pres.elem_str(ppool[j]) + "]) = " + to_string(v) +
                       " but phi must vanish on [p,p]");
    }
  }
  return phi;
}

}  // namespace qw
