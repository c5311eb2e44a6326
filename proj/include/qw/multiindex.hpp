#pragma once

#include <compare>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qw {

/// Finitely supported exponent vector over a totally ordered index set.
/// Ordered first by total size; ties go to the larger exponent at the
/// smallest index where the two differ.
template <class Index>
class MultiIndex {
 public:
  MultiIndex() = default;

  static MultiIndex unit(Index i, int e = 1) {
    MultiIndex m;
    m.bump(std::move(i), e);
    return m;
  }

  bool empty() const { return exp_.empty(); }

  int size() const {
    int s = 0;
    for (const auto& [i, e] : exp_) s += e;
    return s;
  }

  const std::map<Index, int>& exponents() const { return exp_; }

  int exponent(const Index& i) const {
    auto it = exp_.find(i);
    return it == exp_.end() ? 0 : it->second;
  }

  void bump(const Index& i, int delta) {
    if (delta == 0) return;
    int e = exponent(i) + delta;
    if (e < 0) throw std::domain_error("multi-index exponent went negative");
    if (e == 0)
      exp_.erase(i);
    else
      exp_[i] = e;
  }

  /// Largest index carrying a nonzero exponent.
  const Index& height() const {
    if (exp_.empty()) throw std::domain_error("undefined height: zero multi-index");
    return exp_.rbegin()->first;
  }

  /// this minus one unit at the height.
  MultiIndex hat() const {
    MultiIndex m = *this;
    Index h = height();
    m.bump(h, -1);
    return m;
  }

  bool leq_componentwise(const MultiIndex& o) const {
    for (const auto& [i, e] : exp_)
      if (e > o.exponent(i)) return false;
    return true;
  }

  std::strong_ordering compare(const MultiIndex& o) const {
    int s = size(), t = o.size();
    if (s != t) return s <=> t;
    auto a = exp_.begin();
    auto b = o.exp_.begin();
    while (a != exp_.end() && b != o.exp_.end()) {
      if (a->first != b->first) {
        // whichever has the smaller next index holds a positive exponent
        // where the other holds zero
        return (a->first < b->first) ? std::strong_ordering::greater
                                     : std::strong_ordering::less;
      }
      if (a->second != b->second) return a->second <=> b->second;
      ++a;
      ++b;
    }
    return std::strong_ordering::equal;
  }

  bool operator==(const MultiIndex&) const = default;
  bool operator<(const MultiIndex& o) const { return compare(o) == std::strong_ordering::less; }
  bool operator>(const MultiIndex& o) const { return compare(o) == std::strong_ordering::greater; }

  /// "{i:e, j:f}" with a caller-supplied index printer.
  template <class Printer>
  std::string str(Printer&& print_index) const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [i, e] : exp_) {
      if (!first) os << ", ";
      first = false;
      os << print_index(i) << ':' << e;
    }
    os << '}';
    return os.str();
  }

  std::string str() const {
    return str([](const Index& i) {
      std::ostringstream os;
      os << i;
      return os.str();
    });
  }

 private:
  std::map<Index, int> exp_;
};

}  // namespace qw
