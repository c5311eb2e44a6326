#pragma once

#include "qw/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qw {

/// Finitely supported vector over an ordered key universe. Never stores zeros.
template <class Key>
class SparseVec {
 public:
  using Map = std::map<Key, Rational>;

  SparseVec() = default;

  static SparseVec unit(Key k, Rational c = Rational(1)) {
    SparseVec v;
    v.set(std::move(k), std::move(c));
    return v;
  }

  bool zero() const { return entries_.empty(); }
  size_t support_size() const { return entries_.size(); }
  const Map& entries() const { return entries_; }

  const Rational& coeff(const Key& k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? rat_zero() : it->second;
  }

  void set(Key k, Rational v) {
    if (v == 0)
      entries_.erase(k);
    else
      entries_[std::move(k)] = std::move(v);
  }

  void add(const Key& k, const Rational& v) {
    if (v == 0) return;
    auto [it, fresh] = entries_.emplace(k, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) entries_.erase(it);
    }
  }

  void add_scaled(const SparseVec& other, const Rational& c) {
    if (c == 0) return;
    for (const auto& [k, v] : other.entries_) add(k, v * c);
  }

  SparseVec& operator+=(const SparseVec& o) {
    add_scaled(o, Rational(1));
    return *this;
  }
  SparseVec& operator-=(const SparseVec& o) {
    add_scaled(o, Rational(-1));
    return *this;
  }
  SparseVec& operator*=(const Rational& c) {
    if (c == 0) {
      entries_.clear();
      return *this;
    }
    for (auto& [k, v] : entries_) v *= c;
    return *this;
  }

  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(SparseVec a, const Rational& c) { return a *= c; }
  friend SparseVec operator*(const Rational& c, SparseVec a) { return a *= c; }
  friend SparseVec operator-(SparseVec a) { return a *= Rational(-1); }

  bool operator==(const SparseVec&) const = default;

  /// Smallest-key entry; the vector must be nonzero.
  const std::pair<const Key, Rational>& leading() const { return *entries_.begin(); }

 private:
  Map entries_;
};

/// Rows over a shared, explicitly ordered column universe.
template <class Key>
struct SparseMatrix {
  std::vector<Key> columns;
  std::vector<SparseVec<Key>> rows;
};

template <class Key>
Rational dot(const SparseVec<Key>& a, const SparseVec<Key>& b) {
  const auto& small = a.support_size() <= b.support_size() ? a : b;
  const auto& large = a.support_size() <= b.support_size() ? b : a;
  Rational acc(0);
  for (const auto& [k, v] : small.entries()) acc += v * large.coeff(k);
  return acc;
}

/// Incrementally maintained reduced row echelon basis; pivots are the first
/// nonzero key of each row in column order, normalized to 1.
template <class Key>
class RrefBasis {
 public:
  /// Fully reduces v against the current rows.
  SparseVec<Key> reduce(SparseVec<Key> v) const {
    while (true) {
      const SparseVec<Key>* row = nullptr;
      Rational c;
      for (const auto& [k, val] : v.entries()) {
        auto it = rows_.find(k);
        if (it != rows_.end()) {
          row = &it->second;
          c = val;
          break;
        }
      }
      if (!row) return v;
      v.add_scaled(*row, -c);
    }
  }

  /// Inserts v if independent; returns its pivot key when rank grew.
  std::optional<Key> insert(SparseVec<Key> v) {
    v = reduce(std::move(v));
    if (v.zero()) return std::nullopt;
    Key pivot = v.leading().first;
    v *= Rational(1) / v.leading().second;
    for (auto& [q, row] : rows_) {
      Rational c = row.coeff(pivot);
      if (c != 0) row.add_scaled(v, -c);
    }
    rows_.emplace(pivot, std::move(v));
    return pivot;
  }

  size_t rank() const { return rows_.size(); }
  bool has_pivot(const Key& k) const { return rows_.count(k) != 0; }
  const std::map<Key, SparseVec<Key>>& rows() const { return rows_; }

 private:
  std::map<Key, SparseVec<Key>> rows_;
};

template <class Key>
size_t rank(const SparseMatrix<Key>& m) {
  RrefBasis<Key> b;
  for (const auto& r : m.rows) b.insert(r);
  return b.rank();
}

/// Exact basis of {v : m v = 0}: one vector per free column, in column order,
/// with the free coordinate set to 1 (canonical reduced-echelon solutions).
template <class Key>
std::vector<SparseVec<Key>> nullspace(const SparseMatrix<Key>& m) {
  RrefBasis<Key> b;
  for (const auto& r : m.rows) b.insert(r);
  std::vector<SparseVec<Key>> out;
  for (const Key& c : m.columns) {
    if (b.has_pivot(c)) continue;
    SparseVec<Key> v = SparseVec<Key>::unit(c);
    for (const auto& [p, row] : b.rows()) v.add(p, -row.coeff(c));
    out.push_back(std::move(v));
  }
  return out;
}

template <class Key>
bool in_span(const SparseVec<Key>& v, const std::vector<SparseVec<Key>>& basis) {
  RrefBasis<Key> b;
  for (const auto& r : basis) b.insert(r);
  return b.reduce(v).zero();
}

}  // namespace qw
