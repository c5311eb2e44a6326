#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qw {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational scalar, always canonical: lowest terms, positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline const Rational& rat_zero() {
  static const Rational z{0};
  return z;
}

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

/// Narrows an integral rational to long; throws on non-integers.
inline long to_long(const Rational& q) {
  if (!is_integer(q)) throw std::domain_error("rational is not an integer: " + q.str());
  return static_cast<long>(numerator_of(q).convert_to<long long>());
}

inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "p", "-p" or "p/q". Result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  size_t b = text.find_first_not_of(" \t");
  size_t e = text.find_last_not_of(" \t");
  if (b == std::string_view::npos) throw std::invalid_argument("empty rational literal");
  std::string s(text.substr(b, e - b + 1));
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
      seen_digit = false;
    } else if (s[i] >= '0' && s[i] <= '9') {
      seen_digit = true;
    } else {
      throw std::invalid_argument("invalid rational literal: '" + s + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("invalid rational literal: '" + s + "'");
  Rational r(s);
  return r;
}

/// base^e for integer e; negative e inverts (base must be nonzero then).
inline Rational rat_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base == 0) {
    if (e < 0) throw std::domain_error("0 raised to a negative power");
    return Rational(0);
  }
  Rational acc(1);
  Rational b = base;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
  while (n) {
    if (n & 1ul) acc *= b;
    b *= b;
    n >>= 1;
  }
  if (e < 0) acc = Rational(1) / acc;
  return acc;
}

}  // namespace qw
