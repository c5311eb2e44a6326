#include "qw/catalog.hpp"
#include "qw/phi.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qw;

namespace {

std::map<std::string, Rational> P(std::initializer_list<std::pair<std::string, Rational>> kv) {
  return {kv.begin(), kv.end()};
}

PhiMap phi_of(const LiePresentation& pres,
              std::initializer_list<std::pair<const char*, Rational>> kv, long window = 8) {
  std::map<BasisElem, Rational> a;
  for (auto& [s, v] : kv) a[pres.parse_elem(s)] = v;
  return make_phi(pres, std::move(a), std::nullopt, window);
}

}  // namespace

TEST(Lie, MirrorHvBracketHalfInteger) {
  auto d = build_algebra("mirror_hv");
  // stored h index n means r = n + 1/2, so h0 is h_(1/2) and [d_2, h_(1/2)] = -(1/2) h_(5/2)
  LieElement r = d.bracket(d.elem("d", 2), d.elem("h", 0));
  ASSERT_EQ(r.support_size(), 1u);
  EXPECT_EQ(r.coeff(d.elem("h", 2)), Rational(-1, 2));
  EXPECT_EQ(d.pretty(d.elem("h", 2)), "h(5/2)");
}

TEST(Lie, WabTakiffBracket) {
  auto g = build_algebra("w_ab", P({{"a", Rational(0)}, {"b", Rational(-1)}}));
  LieElement r = g.bracket(g.elem("L", 1), g.elem("H", 2));
  ASSERT_EQ(r.support_size(), 1u);
  EXPECT_EQ(r.coeff(g.elem("H", 3)), Rational(1));
}

TEST(Lie, BracketWithItselfVanishes) {
  auto g = build_algebra("hv");
  LieElement u;
  u.add(g.elem("L", 2), Rational(3));
  u.add(g.elem("I", -1), Rational(1, 2));
  u.add(g.elem("z2"), Rational(-5));
  EXPECT_TRUE(g.bracket(u, u).zero());
}

TEST(Lie, AntisymmetryOnRandomPairs) {
  std::mt19937_64 rng(11);
  for (const char* name : {"hv", "mirror_hv", "planar_galilean", "w1pp"}) {
    auto g = name == std::string("w1pp") ? build_algebra(name, P({{"k", Rational(2)}}))
                                         : build_algebra(name);
    auto pool = g.window_elems(6);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (int t = 0; t < 200; ++t) {
      const auto &a = pool[pick(rng)], &b = pool[pick(rng)];
      EXPECT_TRUE((g.bracket(a, b) + g.bracket(b, a)).zero());
    }
  }
}

TEST(Lie, OutOfRangeIndexIsAnError) {
  auto g = build_algebra("g_ell", P({{"ell", Rational(1, 2)}}));
  EXPECT_THROW(g.elem("p", 2), LieError);
  EXPECT_THROW(g.bracket(BasisElem{g.family_id("p"), {5}}, g.elem("e")), LieError);
}

TEST(Lie, JacobiHoldsAcrossCatalog) {
  for (const auto& e : catalog()) {
    std::map<std::string, Rational> params;
    if (e.name == "g_ell") params = P({{"ell", Rational(3, 2)}});
    if (e.name == "schrodinger") params = P({{"n", Rational(2)}});
    if (e.name == "w_ab") params = P({{"a", Rational(1, 2)}, {"b", Rational(2)}});
    if (e.name == "w1pp") params = P({{"k", Rational(3)}});
    if (e.name == "wn_plus") params = P({{"n", Rational(2)}});
    auto g = e.build(params);
    auto rep = g.check_jacobi(10, 500);
    EXPECT_TRUE(rep.ok) << e.name << ": " << rep.message;
    if (g.finite_dimensional()) {
      long n = static_cast<long>(g.window_elems(0).size());
      EXPECT_TRUE(rep.checked == n * n * n || rep.checked >= 500) << e.name;
    } else {
      EXPECT_GE(rep.checked, 500) << e.name;
    }
  }
}

TEST(Lie, JacobiHeisenbergExhaustive) {
  auto g = build_algebra("heisenberg");
  auto rep = g.check_jacobi(0, 1000);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.checked, 27);  // exhaustive over {x,y,z}
}

TEST(Lie, JacobiCatchesCorruptedTable) {
  // deliberately wrong sl2: [e,f] = h but [h,e] = 2f breaks Jacobi
  std::vector<Family> fams{detail::singleton("e", false, false),
                           detail::singleton("h", false, false),
                           detail::singleton("f", false, false)};
  auto half = [](const BasisElem& a, const BasisElem& b) {
    LieElement r;
    if (a.family == 0 && b.family == 1) detail::add_term(r, Rational(-2), 2, {});  // [e,h] = -2f (wrong)
    if (a.family == 0 && b.family == 2) detail::add_term(r, Rational(1), 1, {});   // [e,f] = h
    if (a.family == 1 && b.family == 2) detail::add_term(r, Rational(-2), 2, {});  // [h,f] = -2f
    return r;
  };
  LiePresentation bad("bad_sl2", std::move(fams), half);
  auto rep = bad.check_jacobi(0, 1000);
  EXPECT_FALSE(rep.ok);
  EXPECT_TRUE(rep.violation.has_value());
}

TEST(Lie, GradingConsistency) {
  std::mt19937_64 rng(23);
  for (const char* name : {"hv", "mirror_hv", "planar_galilean"}) {
    auto g = build_algebra(name);
    auto pool = g.window_elems(7);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (int t = 0; t < 300; ++t) {
      const auto &a = pool[pick(rng)], &b = pool[pick(rng)];
      LieElement br = g.bracket(a, b);
      for (const auto& [c, v] : br.entries())
        EXPECT_EQ(*g.grade_of(c), *g.grade_of(a) + *g.grade_of(b));
    }
  }
}

TEST(Lie, IdealCheckSchrodinger) {
  auto g = build_algebra("schrodinger", P({{"n", Rational(2)}}));
  auto rep = g.check_ideal(0);
  EXPECT_TRUE(rep.ideal_ok);
  // [p,p] = C z, so x1 is a p-element outside the derived span
  EXPECT_EQ(rep.pp_rank, 1u);
  ASSERT_EQ(rep.pp_pivots.size(), 1u);
  EXPECT_EQ(rep.pp_pivots[0], g.elem("z"));
  ASSERT_TRUE(rep.nonperfect_witness.has_value());
  EXPECT_EQ(*rep.nonperfect_witness, g.elem("x", 1));
}

TEST(Lie, IdealCheckHeisenbergVirasoro) {
  auto g = build_algebra("hv");
  auto rep = g.check_ideal(8);
  EXPECT_TRUE(rep.ideal_ok);
  EXPECT_EQ(rep.pp_rank, 1u);
  EXPECT_EQ(rep.pp_pivots[0], g.elem("z3"));
}

TEST(Lie, IdealCheckWittBorel) {
  auto g = build_algebra("w1pp", P({{"k", Rational(2)}}));
  auto rep = g.check_ideal(12);
  EXPECT_TRUE(rep.ideal_ok);
  // within the window, [p_2, p_2] spans exactly d_5..d_12
  RrefBasis<BasisElem> span;
  for (const auto& p : rep.pp_pivots) span.insert(LieElement::unit(p));
  for (int j = 5; j <= 12; ++j)
    EXPECT_TRUE(span.reduce(LieElement::unit(g.elem("d", j))).zero()) << j;
  for (int j = 2; j <= 4; ++j)
    EXPECT_FALSE(span.reduce(LieElement::unit(g.elem("d", j))).zero()) << j;
  ASSERT_TRUE(rep.nonperfect_witness.has_value());
  EXPECT_EQ(*rep.nonperfect_witness, g.elem("d", 2));
}

TEST(Lie, IdealCheckAcrossCatalog) {
  for (const auto& e : catalog()) {
    std::map<std::string, Rational> params;
    if (e.name == "g_ell") params = P({{"ell", Rational(1)}});
    if (e.name == "schrodinger") params = P({{"n", Rational(1)}});
    if (e.name == "w_ab") params = P({{"a", Rational(0)}, {"b", Rational(1)}});
    if (e.name == "w1pp") params = P({{"k", Rational(1)}});
    if (e.name == "wn_plus") params = P({{"n", Rational(2)}});
    auto g = e.build(params);
    auto rep = g.check_ideal(g.finite_dimensional() ? 0 : 6);
    EXPECT_TRUE(rep.ideal_ok) << e.name;
    EXPECT_TRUE(rep.nonperfect_witness.has_value()) << e.name;
  }
}

// ---- catalog ------------------------------------------------------------

TEST(Catalog, GEllHalfDimensions) {
  auto g = build_algebra("g_ell", P({{"ell", Rational(1, 2)}}));
  auto all = g.window_elems(0);
  EXPECT_EQ(all.size(), 5u);  // e, h, f plus p of dimension 2*ell + 1 = 2
  size_t pdim = 0;
  for (const auto& b : all) pdim += g.in_ideal(b) ? 1 : 0;
  EXPECT_EQ(pdim, 2u);
}

TEST(Catalog, SchrodingerBasisList) {
  auto g = build_algebra("schrodinger", P({{"n", Rational(1)}}));
  auto all = g.window_elems(0);
  std::vector<std::string> names;
  for (const auto& b : all) names.push_back(g.elem_str(b));
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"e", "f", "h", "x1", "y1", "z"}));
}

TEST(Catalog, WabAliases) {
  auto g = build_algebra("W(a,b)", P({{"a", Rational(0)}, {"b", Rational(-1)}}));
  EXPECT_EQ(g.name(), "w_ab");
  EXPECT_EQ(g.param("b"), Rational(-1));
}

TEST(Catalog, BadParamsRejected) {
  EXPECT_THROW(build_algebra("g_ell", P({{"ell", Rational(1, 3)}})), LieError);
  EXPECT_THROW(build_algebra("wn_plus", P({{"n", Rational(1)}})), LieError);
  EXPECT_THROW(build_algebra("w1pp", P({{"k", Rational(0)}})), LieError);
  EXPECT_THROW(build_algebra("no_such_algebra"), LieError);
}

TEST(Catalog, GEllAdjointWeights) {
  for (Rational ell : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
    auto g = build_algebra("g_ell", P({{"ell", ell}}));
    long L2 = to_long(ell * 2);
    for (long k = 0; k <= L2; ++k) {
      LieElement r = g.bracket(g.elem("h"), g.elem("p", static_cast<int>(k)));
      LieElement expect = LieElement::unit(g.elem("p", static_cast<int>(k)), 2 * (ell - k));
      EXPECT_EQ(r, expect);
    }
  }
}

// ---- phi ------------------------------------------------------------------

TEST(Phi, ValidAssignments) {
  auto hv = build_algebra("hv");
  auto phi = phi_of(hv, {{"I3", Rational(1)}});
  EXPECT_EQ(phi(hv.elem("I", 3)), Rational(1));
  EXPECT_EQ(phi(hv.elem("I", 0)), Rational(0));

  auto h1 = build_algebra("heisenberg");
  auto phi2 = phi_of(h1, {{"z", Rational(1)}});
  EXPECT_EQ(phi2(h1.elem("z")), Rational(1));
}

TEST(Phi, ForcedZerosRejected) {
  auto pg = build_algebra("planar_galilean");
  EXPECT_THROW(phi_of(pg, {{"I0", Rational(1)}}), PhiError);  // I_0 lies in [p,p]
  auto hv = build_algebra("hv");
  EXPECT_THROW(phi_of(hv, {{"z3", Rational(1)}}), PhiError);
  auto sch = build_algebra("schrodinger", P({{"n", Rational(1)}}));
  EXPECT_THROW(phi_of(sch, {{"z", Rational(1)}, {"x1", Rational(1)}}), PhiError);
}

TEST(Phi, NonIdealAssignmentRejected) {
  auto hv = build_algebra("hv");
  EXPECT_THROW(phi_of(hv, {{"L0", Rational(1)}}), PhiError);
}

TEST(Phi, ZeroPhiRejected) {
  auto hv = build_algebra("hv");
  EXPECT_THROW(phi_of(hv, {{"I2", Rational(0)}}), PhiError);
}

TEST(Phi, RuleBasedValues) {
  auto d = build_algebra("mirror_hv");
  PhiRule rule{d.family_id("h"), Expr::parse("2^n")};
  auto phi = make_phi(d, {}, rule, 8);
  EXPECT_FALSE(phi.finite_support());
  EXPECT_EQ(phi(d.elem("h", 3)), Rational(8));
  EXPECT_EQ(phi(d.elem("h", -2)), Rational(1, 4));
  EXPECT_EQ(phi(d.elem("c")), Rational(0));
}

TEST(Phi, VanishesOnPPSpanWindow) {
  auto d = build_algebra("mirror_hv");
  PhiRule rule{d.family_id("h"), Expr::parse("n+1")};
  auto phi = make_phi(d, {}, rule, 8);
  auto rep = d.check_ideal(8);
  for (const auto& piv : rep.pp_pivots) EXPECT_EQ(phi(piv), Rational(0));
}

// every valid phi vanishes on the whole [p,p]-span within the window
TEST(Phi, VanishesOnPPSpanAcrossCatalog) {
  std::mt19937_64 rng(1618);
  for (const char* name : {"schrodinger", "hv", "planar_galilean", "w1pp", "wn_plus"}) {
    auto g = build_algebra(name, qwtest::params_for(name));
    auto rep = g.check_ideal(g.finite_dimensional() ? 0 : 5);
    for (int t = 0; t < 5; ++t) {
      auto phi = qwtest::random_phi(g, rng);
      for (const auto& piv : rep.pp_pivots) EXPECT_EQ(phi(piv), Rational(0)) << name;
    }
  }
}
