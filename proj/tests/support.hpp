#pragma once

// Shared test helpers: catalog instances with standard parameters and a
// sampler for admissible random phi per algebra (respecting forced zeros).

#include "qw/annihilator.hpp"
#include "qw/catalog.hpp"

#include <random>

namespace qwtest {

using namespace qw;

inline std::map<std::string, Rational> params_for(const std::string& name) {
  if (name == "g_ell") return {{"ell", Rational(1)}};
  if (name == "schrodinger") return {{"n", Rational(1)}};
  if (name == "w_ab") return {{"a", Rational(0)}, {"b", Rational(-1)}};
  if (name == "w1pp") return {{"k", Rational(2)}};
  if (name == "wn_plus") return {{"n", Rational(2)}};
  return {};
}

inline Rational nonzero_coeff(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(1, 6);
  int v = pick(rng);
  return Rational(v <= 3 ? v : 3 - v);  // {-3,-2,-1,1,2,3}
}

inline Rational maybe_coeff(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 6);
  int v = pick(rng);
  return Rational(v <= 3 ? v : 3 - v);  // {-3..3}
}

/// Elements on which phi may carry nonzero values for this presentation.
inline std::vector<BasisElem> phi_support_pool(const LiePresentation& g, long window = 4) {
  const std::string& n = g.name();
  std::vector<BasisElem> pool;
  auto add_range = [&](const char* fam, int lo, int hi) {
    for (int i = lo; i <= hi; ++i) pool.push_back(g.elem(fam, i));
  };
  if (n == "heisenberg") {
    pool.push_back(g.elem("z"));
  } else if (n == "g_ell") {
    int L2 = static_cast<int>(to_long(g.param("ell") * 2));
    add_range("p", 0, L2);
  } else if (n == "schrodinger") {
    int nn = static_cast<int>(to_long(g.param("n")));
    add_range("x", 1, nn);
    add_range("y", 1, nn);
  } else if (n == "mirror_hv") {
    add_range("h", -static_cast<int>(window), static_cast<int>(window));
    pool.push_back(g.elem("c"));
  } else if (n == "hv") {
    add_range("I", -static_cast<int>(window), static_cast<int>(window));
    pool.push_back(g.elem("z1"));
    pool.push_back(g.elem("z2"));
  } else if (n == "planar_galilean") {
    add_range("H", -static_cast<int>(window), static_cast<int>(window));
  } else if (n == "w_ab") {
    add_range("H", -static_cast<int>(window), static_cast<int>(window));
  } else if (n == "w1pp") {
    int k = static_cast<int>(to_long(g.param("k")));
    add_range("d", k, 2 * k);
  } else if (n == "wn_plus") {
    for (const auto& b : g.slice(1)) pool.push_back(b);
  } else {
    throw LieError("phi_support_pool: unknown algebra " + n);
  }
  return pool;
}

/// Random admissible finite-support phi: a few nonzero values drawn from the
/// support pool. finite_only restricts hv to its "finite" class (z2 = 0).
inline PhiMap random_phi(const LiePresentation& g, std::mt19937_64& rng, bool finite_only = false,
                         int max_support = 3) {
  auto pool = phi_support_pool(g);
  if (finite_only) {
    std::erase_if(pool, [&](const BasisElem& b) {
      const std::string& fam = g.families()[b.family].name;
      return fam == "z2" || fam == "c" || fam == "z1";
    });
  }
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> count(1, max_support);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::map<BasisElem, Rational> a;
    int c = count(rng);
    for (int i = 0; i < c; ++i) a[pool[pick(rng)]] = nonzero_coeff(rng);
    try {
      return make_phi(g, std::move(a));
    } catch (const PhiError&) {
      continue;  // e.g. sampled nothing but forced-zero combinations
    }
  }
  throw LieError("random_phi: could not sample an admissible phi for " + g.name());
}

}  // namespace qwtest
