#pragma once

#include "qw/annihilator.hpp"
#include "qw/multiindex.hpp"

#include <mutex>
#include <random>
#include <set>

namespace qw {

struct PartitionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Normal-ordered monomial x^a y^b acting on the cyclic vector. x factors are
/// natural basis elements of the complement; y factors are the annihilator
/// basis vectors, addressed by ordinal.
struct PBWMonomial {
  MultiIndex<BasisElem> x;
  MultiIndex<int> y;

  bool vacuum() const { return x.empty() && y.empty(); }
  int degree() const { return x.size() + y.size(); }

  /// Total degree first, then the x-part order, then the y-part order.
  std::strong_ordering order(const PBWMonomial& o) const {
    if (int d = degree(), e = o.degree(); d != e) return d <=> e;
    if (auto c = x.compare(o.x); c != std::strong_ordering::equal) return c;
    return y.compare(o.y);
  }

  bool operator==(const PBWMonomial&) const = default;
  bool operator<(const PBWMonomial& o) const { return order(o) == std::strong_ordering::less; }
};

using PBWVector = SparseVec<PBWMonomial>;

inline int max_x_size(const PBWVector& v) {
  int m = 0;
  for (const auto& [t, c] : v.entries()) m = std::max(m, t.x.size());
  return m;
}

inline bool pure_y(const PBWVector& v) {
  for (const auto& [t, c] : v.entries())
    if (!t.x.empty()) return false;
  return true;
}

inline bool proportional_to_vacuum(const PBWVector& v) {
  return v.support_size() == 1 && v.entries().begin()->first.vacuum();
}

/// max Supp(v) in the x-part order (defined for nonzero v).
inline MultiIndex<BasisElem> x_degree(const PBWVector& v) {
  if (v.zero()) throw std::domain_error("degree of the zero vector");
  const MultiIndex<BasisElem>* best = nullptr;
  for (const auto& [t, c] : v.entries())
    if (!best || t.x > *best) best = &t.x;
  return *best;
}

enum class ModuleMode { Universal, Quotient };
enum class Tier { X, Y, P };

/// Everything needed to compute in W(phi) (Universal) or in the induced
/// quotient V(phi') (Quotient, with extension values for the y generators).
/// Holds non-owning references to the presentation; keep it alive.
class ModuleContext {
 public:
  ModuleContext(const LiePresentation& pres, PhiMap phi, AnnihilatorReport report,
                ModuleMode mode = ModuleMode::Universal, std::map<int, Rational> extension = {})
      : pres_(&pres),
        phi_(std::move(phi)),
        rep_(std::move(report)),
        mode_(mode),
        ext_(std::move(extension)) {
    for (int j = 0; j < static_cast<int>(rep_.y_markers.size()); ++j)
      marker_ord_[rep_.y_markers[j]] = j;
    for (const auto& c : rep_.candidates) {
      candidate_set_.insert(c);
      if (!marker_ord_.count(c)) x_window_.push_back(c);
    }
    if (mode_ == ModuleMode::Quotient) {
      for (int j = 0; j < y_count(); ++j)
        if (!ext_.count(j))
          throw LieError("quotient mode needs an extension value for every y generator");
      // the extension must be a homomorphism on g^phi: it kills brackets
      for (int i = 0; i < y_count(); ++i)
        for (int j = i + 1; j < y_count(); ++j) {
          LieElement br = pres_->bracket(rep_.y_basis[i], rep_.y_basis[j]);
          if (br.zero()) continue;
          Rational v = phi_prime(br);
          if (v != 0)
            throw LieError("extension values are not a homomorphism: phi'([y" +
                           std::to_string(i) + ",y" + std::to_string(j) +
                           "]) = " + to_string(v));
        }
    }
  }

  const LiePresentation& pres() const { return *pres_; }
  const PhiMap& phi() const { return phi_; }
  const AnnihilatorReport& report() const { return rep_; }
  ModuleMode mode() const { return mode_; }
  int y_count() const { return static_cast<int>(rep_.y_basis.size()); }
  const LieElement& y_vector(int ord) const { return rep_.y_basis[ord]; }
  const std::vector<BasisElem>& x_window() const { return x_window_; }
  const Rational& extension_value(int ord) const { return ext_.at(ord); }

  Tier classify(const BasisElem& b) const {
    if (pres_->in_ideal(b)) return Tier::P;
    if (marker_ord_.count(b)) return Tier::Y;
    if (candidate_set_.count(b)) return Tier::X;
    {
      std::scoped_lock lk(mu_);
      auto it = offwindow_.find(b);
      if (it != offwindow_.end()) return it->second;
    }
    if (rep_.regime != Regime::Exact)
      throw PartitionError(pres_->name() + ": tier of " + pres_->elem_str(b) +
                           " is unknown (outside the window of a window-verified split)");
    if (membership(*pres_, phi_, LieElement::unit(b)))
      throw PartitionError(pres_->name() + ": " + pres_->elem_str(b) +
                           " lies in the annihilator beyond the computed y-window; enlarge it");
    std::scoped_lock lk(mu_);
    offwindow_.emplace(b, Tier::X);
    return Tier::X;
  }

  PBWVector act(const LieElement& g, const PBWVector& v) const {
    PBWVector out;
    for (const auto& [c, gen] : adapt(g))
      for (const auto& [mono, cv] : v.entries()) out.add_scaled(act_gen(gen, mono), c * cv);
    return out;
  }

  PBWVector act(const BasisElem& g, const PBWVector& v) const {
    return act(LieElement::unit(g), v);
  }

  /// Action of the ordinal-th y generator.
  PBWVector act_y(int ord, const PBWVector& v) const {
    PBWVector out;
    for (const auto& [mono, cv] : v.entries())
      out.add_scaled(act_gen(Gen{Tier::Y, {}, ord}, mono), cv);
    return out;
  }

  /// Ideal elements that can act non-diagonally on vectors assembled from at
  /// most `degree` window generators; complete in the exact regime.
  std::vector<BasisElem> module_constraints(int degree) const {
    if (pres_->finite_dimensional()) return pres_->ideal_window(0);
    if (rep_.regime == Regime::Exact) {
      long lo_gen = 0, hi_gen = 0;
      auto take = [&](const BasisElem& b) {
        long g = *pres_->grade_of(b);
        lo_gen = std::min(lo_gen, g);
        hi_gen = std::max(hi_gen, g);
      };
      for (const auto& b : x_window_) take(b);
      for (const auto& y : rep_.y_basis)
        for (const auto& [b, c] : y.entries()) take(b);
      auto supp = phi_.support_grades();
      long lo = *supp.begin() - static_cast<long>(degree) * hi_gen;
      long hi = *supp.rbegin() - static_cast<long>(degree) * lo_gen;
      std::vector<BasisElem> out;
      for (long g = lo; g <= hi; ++g)
        for (const auto& b : pres_->slice(g))
          if (pres_->in_ideal(b)) out.push_back(b);
      std::sort(out.begin(), out.end());
      return out;
    }
    long bound = rep_.window.constraint.value_or(rep_.window.candidate + 4);
    return pres_->ideal_window(bound);
  }

  std::string mono_str(const PBWMonomial& m) const {
    if (m.vacuum()) return "w";
    std::ostringstream os;
    for (const auto& [b, e] : m.x.exponents()) {
      os << pres_->elem_str(b);
      if (e > 1) os << '^' << e;
      os << '*';
    }
    for (const auto& [ord, e] : m.y.exponents()) {
      os << pres_->elem_str(rep_.y_markers[ord]);
      if (e > 1) os << '^' << e;
      os << '*';
    }
    os << 'w';
    return os.str();
  }

  std::string vec_str(const PBWVector& v) const {
    if (v.zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : v.entries()) {
      if (!first) os << " + ";
      first = false;
      if (c != 1) os << to_string(c) << '*';
      os << mono_str(m);
    }
    return os.str();
  }

 private:
  struct Gen {
    Tier tier = Tier::X;
    BasisElem elem;  // X and P
    int yord = -1;   // Y

    int rank() const { return tier == Tier::X ? 0 : tier == Tier::Y ? 1 : 2; }
    bool le(const Gen& o) const {
      if (rank() != o.rank()) return rank() < o.rank();
      if (tier == Tier::Y) return yord <= o.yord;
      return elem <= o.elem;
    }
  };

  std::vector<std::pair<Rational, Gen>> adapt(const LieElement& v) const {
    std::vector<std::pair<Rational, Gen>> out;
    for (const auto& [b, c] : v.entries()) {
      switch (classify(b)) {
        case Tier::P:
          out.push_back({c, Gen{Tier::P, b, -1}});
          break;
        case Tier::X:
          out.push_back({c, Gen{Tier::X, b, -1}});
          break;
        case Tier::Y: {
          // marker elem = y_ord - (pivot tail), all tail columns are x-tier
          int ord = marker_ord_.at(b);
          out.push_back({c, Gen{Tier::Y, {}, ord}});
          for (const auto& [p, pc] : rep_.y_basis[ord].entries()) {
            if (p == b) continue;
            out.push_back({-c * pc, Gen{Tier::X, p, -1}});
          }
          break;
        }
      }
    }
    return out;
  }

  const LieElement& gen_lie(const Gen& g) const {
    if (g.tier == Tier::Y) return rep_.y_basis[g.yord];
    // unit vectors cached so we can hand out references
    std::scoped_lock lk(mu_);
    auto it = units_.find(g.elem);
    if (it == units_.end()) it = units_.emplace(g.elem, LieElement::unit(g.elem)).first;
    return it->second;
  }

  PBWVector act_gen(const Gen& g, const PBWMonomial& m) const {
    MemoKey key{g.tier, g.elem, g.yord, m};
    {
      std::scoped_lock lk(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    PBWVector out = act_gen_compute(g, m);
    std::scoped_lock lk(mu_);
    memo_.emplace(std::move(key), out);
    return out;
  }

  PBWVector act_gen_compute(const Gen& g, const PBWMonomial& m) const {
    if (m.vacuum()) {
      switch (g.tier) {
        case Tier::X: {
          PBWMonomial r;
          r.x = MultiIndex<BasisElem>::unit(g.elem);
          return PBWVector::unit(r);
        }
        case Tier::Y: {
          if (mode_ == ModuleMode::Quotient)
            return PBWVector::unit(PBWMonomial{}, ext_.at(g.yord));
          PBWMonomial r;
          r.y = MultiIndex<int>::unit(g.yord);
          return PBWVector::unit(r);
        }
        case Tier::P:
          return PBWVector::unit(PBWMonomial{}, phi_(g.elem));
      }
    }
    Gen lead = m.x.empty() ? Gen{Tier::Y, {}, m.y.exponents().begin()->first}
                           : Gen{Tier::X, m.x.exponents().begin()->first, -1};
    if (g.le(lead)) {
      PBWMonomial r = m;
      if (g.tier == Tier::X)
        r.x.bump(g.elem, 1);
      else
        r.y.bump(g.yord, 1);
      return PBWVector::unit(r);
    }
    PBWMonomial rest = m;
    if (lead.tier == Tier::X)
      rest.x.bump(lead.elem, -1);
    else
      rest.y.bump(lead.yord, -1);

    // g f rest = f (g rest) + [g, f] rest
    PBWVector out;
    PBWVector inner = act_gen(g, rest);
    for (const auto& [t, c] : inner.entries()) out.add_scaled(act_gen(lead, t), c);
    LieElement br = pres_->bracket(gen_lie(g), gen_lie(lead));
    if (!br.zero())
      for (const auto& [c, g2] : adapt(br)) out.add_scaled(act_gen(g2, rest), c);
    return out;
  }

  Rational phi_prime(const LieElement& v) const {
    Rational acc(0);
    for (const auto& [c, gen] : adapt(v)) {
      switch (gen.tier) {
        case Tier::P:
          acc += c * phi_(gen.elem);
          break;
        case Tier::Y:
          acc += c * ext_.at(gen.yord);
          break;
        case Tier::X:
          throw LieError("phi' applied to an element with an x-component");
      }
    }
    return acc;
  }

  struct MemoKey {
    Tier tier;
    BasisElem elem;
    int yord;
    PBWMonomial mono;
    bool operator<(const MemoKey& o) const {
      if (tier != o.tier) return tier < o.tier;
      if (elem != o.elem) return elem < o.elem;
      if (yord != o.yord) return yord < o.yord;
      return mono < o.mono;
    }
  };

  const LiePresentation* pres_;
  PhiMap phi_;
  AnnihilatorReport rep_;
  ModuleMode mode_;
  std::map<int, Rational> ext_;
  std::map<BasisElem, int> marker_ord_;
  std::set<BasisElem> candidate_set_;
  std::vector<BasisElem> x_window_;
  mutable std::map<MemoKey, PBWVector> memo_;
  mutable std::map<BasisElem, Tier> offwindow_;
  mutable std::map<BasisElem, LieElement> units_;
  mutable std::mutex mu_;
};

inline ModuleContext make_context(const LiePresentation& pres, const PhiMap& phi, Window w = {},
                                  ModuleMode mode = ModuleMode::Universal,
                                  std::map<int, Rational> extension = {}) {
  return ModuleContext(pres, phi, compute_annihilator(pres, phi, w), mode, std::move(extension));
}

/// All monomials of total degree <= bound over the given x generators and
/// y ordinals, listed in increasing monomial order.
inline std::vector<PBWMonomial> enumerate_monomials(const std::vector<BasisElem>& xs, int y_count,
                                                    int bound) {
  std::vector<PBWMonomial> out;
  std::vector<BasisElem> xsorted = xs;
  std::sort(xsorted.begin(), xsorted.end());
  // multisets over the combined generator list
  std::function<void(size_t, int, PBWMonomial&)> rec = [&](size_t pos, int left, PBWMonomial& cur) {
    out.push_back(cur);
    if (left == 0) return;
    for (size_t i = pos; i < xsorted.size() + static_cast<size_t>(y_count); ++i) {
      if (i < xsorted.size())
        cur.x.bump(xsorted[i], 1);
      else
        cur.y.bump(static_cast<int>(i - xsorted.size()), 1);
      rec(i, left - 1, cur);
      if (i < xsorted.size())
        cur.x.bump(xsorted[i], -1);
      else
        cur.y.bump(static_cast<int>(i - xsorted.size()), -1);
    }
  };
  PBWMonomial cur;
  rec(0, bound, cur);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct WhittakerResult {
  std::vector<PBWVector> basis;
  std::vector<PBWMonomial> span;
  std::vector<BasisElem> constraints;
  bool triangular = true;  // certificate that no other eigenvalue type occurs
  std::optional<std::pair<BasisElem, PBWMonomial>> triangular_violation;
};

/// Solves (p - phi(p)) v = 0 over all monomials of degree <= bound for every
/// derived constraint p. With type_free set, additionally certifies that no
/// quasi-Whittaker vector of a different type exists in the span: each
/// (p - phi(p)) must act strictly order-decreasingly, which pins every
/// eigenvalue to phi(p).
inline WhittakerResult whittaker_vectors(const ModuleContext& ctx, int bound,
                                         bool type_free = false) {
  WhittakerResult out;
  out.span = enumerate_monomials(
      ctx.x_window(), ctx.mode() == ModuleMode::Universal ? ctx.y_count() : 0, bound);
  out.constraints = ctx.module_constraints(bound);

  std::map<int, PBWVector> columns;  // action image per span monomial
  SparseMatrix<int> sys;
  for (int j = 0; j < static_cast<int>(out.span.size()); ++j) sys.columns.push_back(j);
  for (const auto& q : out.constraints) {
    Rational pq = ctx.phi()(q);
    std::map<PBWMonomial, SparseVec<int>> rows;
    for (int j = 0; j < static_cast<int>(out.span.size()); ++j) {
      PBWVector img = ctx.act(q, PBWVector::unit(out.span[j]));
      img.add_scaled(PBWVector::unit(out.span[j]), -pq);
      if (type_free && !img.zero()) {
        // every image term must sit strictly below the source monomial
        for (const auto& [t, c] : img.entries()) {
          if (!(t < out.span[j])) {
            out.triangular = false;
            if (!out.triangular_violation) out.triangular_violation = {q, out.span[j]};
          }
        }
      }
      for (const auto& [t, c] : img.entries()) rows[t].add(j, c);
    }
    for (auto& [t, row] : rows) sys.rows.push_back(std::move(row));
  }
  for (const auto& sol : nullspace(sys)) {
    PBWVector v;
    for (const auto& [j, c] : sol.entries()) v.add(out.span[j], c);
    out.basis.push_back(std::move(v));
  }
  return out;
}

struct ReduceResult {
  PBWVector vec;
  std::vector<BasisElem> trace;
};

/// Constructive descent: applies (p - phi(p)) picked from the constraint
/// window while it strictly lowers the maximal x-size, landing on a
/// quasi-Whittaker vector in U(p)v.
inline ReduceResult reduce(const ModuleContext& ctx, PBWVector v) {
  if (v.zero()) throw std::invalid_argument("reduce: zero vector");
  int start_degree = 0;
  for (const auto& [t, c] : v.entries()) start_degree = std::max(start_degree, t.degree());
  auto qs = ctx.module_constraints(start_degree);
  ReduceResult out;
  while (!pure_y(v)) {
    bool found = false;
    for (const auto& q : qs) {
      PBWVector u = ctx.act(q, v);
      u.add_scaled(v, -ctx.phi()(q));
      if (u.zero()) continue;
      if (max_x_size(u) >= max_x_size(v)) continue;  // would not descend; skip
      v = std::move(u);
      out.trace.push_back(q);
      found = true;
      break;
    }
    if (!found)
      throw LieError(ctx.pres().name() +
                     ": reduce exhausted the constraint window without descending "
                     "(window or partition defect)");
  }
  out.vec = std::move(v);
  return out;
}

/// The maximal submodule J_xi = span{ x^a y^n (y - xi) w } materialized up to
/// a degree bound, with an exact membership test.
struct JxiResult {
  std::vector<PBWVector> spanning;
  RrefBasis<PBWMonomial> span;
  bool vacuum_excluded = false;

  bool contains(const PBWVector& v) const { return span.reduce(v).zero(); }
};

inline JxiResult j_xi_submodule(const ModuleContext& ctx, const Rational& xi, int bound) {
  if (ctx.mode() != ModuleMode::Universal || ctx.y_count() != 1)
    throw LieError("J_xi needs the universal module with exactly one y generator");
  JxiResult out;
  for (int n = 0; n + 1 <= bound; ++n) {
    for (const auto& base : enumerate_monomials(ctx.x_window(), 0, bound - n - 1)) {
      PBWMonomial lo = base, hi = base;
      lo.y.bump(0, n);
      hi.y.bump(0, n + 1);
      PBWVector v = PBWVector::unit(hi);
      v.add_scaled(PBWVector::unit(lo), -xi);
      out.span.insert(v);
      out.spanning.push_back(std::move(v));
    }
  }
  out.vacuum_excluded = !out.contains(PBWVector::unit(PBWMonomial{}));
  return out;
}

struct ProbeResult {
  bool witness_found = false;
  std::optional<PBWVector> witness;
  int trials = 0;
  unsigned seed = 0;
};

/// Brute-force irreducibility evidence at a truncation: every random vector
/// must reduce into the vacuum line and the whittaker solve must find nothing
/// outside it; any escapee is a concrete reducibility witness.
inline ProbeResult irreducibility_probe(const ModuleContext& ctx, int bound, int trials,
                                        unsigned seed) {
  ProbeResult out;
  out.trials = trials;
  out.seed = seed;
  if (ctx.mode() == ModuleMode::Universal && ctx.y_count() > 0) {
    // y w is quasi-Whittaker whenever the y-split is genuine; verify by
    // re-substitution before claiming it
    PBWMonomial ym;
    ym.y.bump(0, 1);
    PBWVector yw = PBWVector::unit(ym);
    bool checks = true;
    for (const auto& q : ctx.module_constraints(1)) {
      PBWVector r = ctx.act(q, yw);
      r.add_scaled(yw, -ctx.phi()(q));
      checks = checks && r.zero();
    }
    if (checks) {
      out.witness_found = true;
      out.witness = yw;
      return out;
    }
  }
  auto ws = whittaker_vectors(ctx, bound);
  for (const auto& v : ws.basis) {
    if (!proportional_to_vacuum(v)) {
      out.witness_found = true;
      out.witness = v;
      return out;
    }
  }
  auto monos = enumerate_monomials(
      ctx.x_window(), ctx.mode() == ModuleMode::Universal ? ctx.y_count() : 0, bound);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<int> terms(1, 3);
  std::uniform_int_distribution<int> coeff(1, 6);
  for (int t = 0; t < trials; ++t) {
    PBWVector v;
    int k = terms(rng);
    for (int i = 0; i < k; ++i) {
      int c = coeff(rng);
      v.add(monos[pick(rng)], Rational(c <= 3 ? c : 3 - c));
    }
    if (v.zero()) continue;
    auto red = reduce(ctx, v);
    if (!proportional_to_vacuum(red.vec)) {
      out.witness_found = true;
      out.witness = red.vec;
      return out;
    }
  }
  return out;
}

/// Dimension of U(p) v computed by iterated action closure; the confinement
/// to componentwise-smaller x-exponents keeps it finite.
inline std::pair<bool, int> locally_finite_check(const ModuleContext& ctx, const PBWVector& v,
                                                 int cap = 5000) {
  if (v.zero()) return {true, 0};
  int deg = 0;
  for (const auto& [t, c] : v.entries()) deg = std::max(deg, t.degree());
  auto qs = ctx.module_constraints(deg);
  RrefBasis<PBWMonomial> span;
  std::vector<PBWVector> frontier;
  span.insert(v);
  frontier.push_back(v);
  while (!frontier.empty()) {
    PBWVector u = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& q : qs) {
      PBWVector r = ctx.act(q, u);
      if (r.zero()) continue;
      if (span.insert(r)) {
        if (static_cast<int>(span.rank()) > cap) return {false, static_cast<int>(span.rank())};
        frontier.push_back(std::move(r));
      }
    }
  }
  return {true, static_cast<int>(span.rank())};
}

}  // namespace qw
