#include "qw/rational.hpp"
#include "qw/sparse.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qw;

TEST(Rational, ParsePrintCanonical) {
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational(" 0 "), Rational(0));
  EXPECT_THROW(parse_rational("1/0"), std::exception);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
}

TEST(Rational, DenominatorPositiveLowestTerms) {
  Rational q = Rational(6) / Rational(-8);
  EXPECT_EQ(numerator_of(q), Integer(-3));
  EXPECT_EQ(denominator_of(q), Integer(4));
}

// a/b + c/d rebuilt from the normalized sum must match plain cross-multiplication
TEST(Rational, ExactAdditionAgainstCrossMultiplication) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 40);
  for (int t = 0; t < 500; ++t) {
    long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Rational s = Rational(a, b) + Rational(c, d);
    EXPECT_EQ(numerator_of(s) * (b * d), Integer(a * d + c * b) * denominator_of(s));
  }
}

TEST(Rational, Pow) {
  EXPECT_EQ(rat_pow(Rational(2), 10), Rational(1024));
  EXPECT_EQ(rat_pow(Rational(2), -3), Rational(1, 8));
  EXPECT_EQ(rat_pow(Rational(-2, 3), 3), Rational(-8, 27));
  EXPECT_EQ(rat_pow(Rational(5), 0), Rational(1));
  EXPECT_THROW(rat_pow(Rational(0), -1), std::domain_error);
}

TEST(SparseVec, NoStoredZeros) {
  SparseVec<int> v;
  v.add(3, Rational(2));
  v.add(3, Rational(-2));
  EXPECT_TRUE(v.zero());
  v.set(1, Rational(5));
  v.set(1, Rational(0));
  EXPECT_TRUE(v.zero());
}

namespace {

SparseMatrix<int> dense(std::vector<std::vector<long>> rows) {
  SparseMatrix<int> m;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t j = 0; j < cols; ++j) m.columns.push_back(static_cast<int>(j));
  for (const auto& r : rows) {
    SparseVec<int> row;
    for (size_t j = 0; j < r.size(); ++j) row.add(static_cast<int>(j), Rational(r[j]));
    m.rows.push_back(std::move(row));
  }
  return m;
}

// independent check oracle: dense fraction arithmetic, partial pivoting by
// row scan, nothing shared with the RREF path under test
size_t dense_rank_oracle(const SparseMatrix<int>& m) {
  std::vector<std::vector<Rational>> a;
  for (const auto& r : m.rows) {
    std::vector<Rational> row(m.columns.size(), Rational(0));
    for (const auto& [k, v] : r.entries()) row[static_cast<size_t>(k)] = v;
    a.push_back(std::move(row));
  }
  size_t rank = 0;
  for (size_t col = 0; col < m.columns.size() && rank < a.size(); ++col) {
    size_t sel = rank;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[rank], a[sel]);
    for (size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][col] == 0) continue;
      Rational f = a[i][col] / a[rank][col];
      for (size_t j = col; j < m.columns.size(); ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

Rational row_dot(const SparseVec<int>& row, const SparseVec<int>& v) { return dot(row, v); }

}  // namespace

TEST(Linalg, RankZeroAndIdentity) {
  EXPECT_EQ(rank(dense({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}})), 0u);
  EXPECT_EQ(rank(dense({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})), 4u);
}

TEST(Linalg, RankPermutationLikeMatrix) {
  // one nonzero per row and per column, so full rank
  EXPECT_EQ(rank(dense({{0, 2, 0, 0}, {5, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 3, 0}})), 4u);
}

TEST(Linalg, NullspaceIdentityEmpty) {
  EXPECT_TRUE(nullspace(dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());
}

TEST(Linalg, NullspaceOneEquation) {
  auto ns = nullspace(dense({{1, -1}}));
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_EQ(ns[0].coeff(0), Rational(1));
  EXPECT_EQ(ns[0].coeff(1), Rational(1));
}

// the 3-variable system phi([c, q]) = 0 over candidates (e, h, f) for the
// rank-2 Schrodinger data: rows q = x1 (hits h), q = y1 (hits e); f is free
TEST(Linalg, NullspaceThreeVariableSystem) {
  auto m = dense({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
  auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_EQ(ns[0].coeff(2), Rational(1));
  EXPECT_EQ(ns[0].support_size(), 1u);
  EXPECT_EQ(rank(m), 2u);
}

TEST(Linalg, InSpan) {
  using V = SparseVec<int>;
  V zero;
  EXPECT_TRUE(in_span(zero, {}));
  V e1 = V::unit(1), e2 = V::unit(2);
  V e12 = e1 + e2;
  EXPECT_TRUE(in_span(e1, {e12, e2}));
  EXPECT_FALSE(in_span(e1, {e2}));
}

TEST(Linalg, RankNullityOnRandomSparseMatrices) {
  std::mt19937_64 rng(20240811);
  for (int t = 0; t < 40; ++t) {
    std::uniform_int_distribution<int> dim(1, 30), val(-4, 4);
    int nrows = dim(rng), ncols = dim(rng);
    SparseMatrix<int> m;
    for (int j = 0; j < ncols; ++j) m.columns.push_back(j);
    std::uniform_int_distribution<int> colpick(0, ncols - 1);
    for (int i = 0; i < nrows; ++i) {
      SparseVec<int> row;
      int fill = std::uniform_int_distribution<int>(0, ncols)(rng);
      for (int s = 0; s < fill; ++s) row.set(colpick(rng), Rational(val(rng)));
      m.rows.push_back(std::move(row));
    }
    size_t r = rank(m);
    auto ns = nullspace(m);
    EXPECT_EQ(r + ns.size(), static_cast<size_t>(ncols));
    EXPECT_EQ(r, dense_rank_oracle(m));
    for (const auto& v : ns)
      for (const auto& row : m.rows) EXPECT_EQ(row_dot(row, v), Rational(0));
  }
}
