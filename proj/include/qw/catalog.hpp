#pragma once

#include "qw/lie.hpp"

#include <map>
#include <string>

namespace qw {

struct CatalogEntry {
  std::string name;
  std::vector<std::string> aliases;
  std::string params_help;
  std::string phi_help;
  std::function<LiePresentation(const std::map<std::string, Rational>&)> build;
};

namespace detail {

inline void add_term(LieElement& v, const Rational& c, int family, std::vector<int> idx) {
  if (c != 0) v.add(BasisElem{family, std::move(idx)}, c);
}

inline long require_int_param(const std::map<std::string, Rational>& params, const std::string& key,
                              long lo, const std::string& algebra) {
  auto it = params.find(key);
  if (it == params.end()) throw LieError(algebra + ": missing parameter '" + key + "'");
  if (!is_integer(it->second) || to_long(it->second) < lo)
    throw LieError(algebra + ": parameter '" + key + "' must be an integer >= " + std::to_string(lo));
  return to_long(it->second);
}

inline Rational require_param(const std::map<std::string, Rational>& params, const std::string& key,
                              const std::string& algebra) {
  auto it = params.find(key);
  if (it == params.end()) throw LieError(algebra + ": missing parameter '" + key + "'");
  return it->second;
}

/// Singleton generator (arity 0).
inline Family singleton(std::string name, bool ideal, bool graded_zero) {
  Family f;
  f.name = std::move(name);
  f.arity = 0;
  f.range_text = "singleton";
  f.in_range = [](const std::vector<int>&) { return true; };
  f.in_ideal = [ideal](const std::vector<int>&) { return ideal; };
  if (graded_zero)
    f.grade = [](const std::vector<int>&) -> std::optional<long> { return 0; };
  f.elems_with_grade = [graded_zero](long d) {
    std::vector<std::vector<int>> out;
    if (graded_zero && d == 0) out.push_back({});
    return out;
  };
  f.all_elems = [] { return std::vector<std::vector<int>>{{}}; };
  f.non_ideal_elems = [ideal] {
    std::vector<std::vector<int>> out;
    if (!ideal) out.push_back({});
    return out;
  };
  return f;
}

/// Z-indexed family with grade = slope*i + offset (slope != 0).
inline Family z_family(std::string name, bool ideal, long slope, long offset,
                       bool half_shift = false) {
  Family f;
  f.name = std::move(name);
  f.arity = 1;
  f.half_shift = half_shift;
  f.range_text = "Z";
  f.in_range = [](const std::vector<int>&) { return true; };
  f.in_ideal = [ideal](const std::vector<int>&) { return ideal; };
  f.grade = [slope, offset](const std::vector<int>& i) -> std::optional<long> {
    return slope * i[0] + offset;
  };
  f.elems_with_grade = [slope, offset](long d) {
    std::vector<std::vector<int>> out;
    if ((d - offset) % slope == 0) out.push_back({static_cast<int>((d - offset) / slope)});
    return out;
  };
  if (ideal)
    f.non_ideal_elems = [] { return std::vector<std::vector<int>>{}; };
  return f;
}

/// Finite integer-interval family (lo..hi), ungraded.
inline Family range_family(std::string name, bool ideal, int lo, int hi) {
  Family f;
  f.name = std::move(name);
  f.arity = 1;
  f.range_text = std::to_string(lo) + ".." + std::to_string(hi);
  f.in_range = [lo, hi](const std::vector<int>& i) { return i[0] >= lo && i[0] <= hi; };
  f.in_ideal = [ideal](const std::vector<int>&) { return ideal; };
  f.all_elems = [lo, hi] {
    std::vector<std::vector<int>> out;
    for (int i = lo; i <= hi; ++i) out.push_back({i});
    return out;
  };
  f.non_ideal_elems = [ideal, lo, hi] {
    std::vector<std::vector<int>> out;
    if (!ideal)
      for (int i = lo; i <= hi; ++i) out.push_back({i});
    return out;
  };
  return f;
}

inline std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == parts - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  if (parts > 0 && total >= 0) rec(0, total);
  return out;
}

// ---- builders ----------------------------------------------------------

inline LiePresentation build_heisenberg(const std::map<std::string, Rational>&) {
  std::vector<Family> fams{singleton("x", false, false), singleton("y", false, false),
                           singleton("z", true, false)};
  const int X = 0, Y = 1, Z = 2;
  auto half = [=](const BasisElem& a, const BasisElem& b) {
    LieElement r;
    if (a.family == X && b.family == Y) add_term(r, Rational(1), Z, {});
    return r;
  };
  return LiePresentation("heisenberg", std::move(fams), half, {},
                         {"[x,y] = z", "[x,z] = [y,z] = 0"});
}

inline LiePresentation build_g_ell(const std::map<std::string, Rational>& params) {
  Rational ell = require_param(params, "ell", "g_ell");
  Rational two_ell = ell * 2;
  if (!is_integer(two_ell) || to_long(two_ell) < 1)
    throw LieError("g_ell: parameter 'ell' must lie in (1/2)N");
  int L2 = static_cast<int>(to_long(two_ell));
  std::vector<Family> fams{singleton("e", false, false), singleton("h", false, false),
                           singleton("f", false, false), range_family("p", true, 0, L2)};
  const int E = 0, H = 1, F = 2, P = 3;
  auto half = [=](const BasisElem& a, const BasisElem& b) {
    LieElement r;
    if (a.family == E && b.family == H) add_term(r, Rational(-2), E, {});
    if (a.family == E && b.family == F) add_term(r, Rational(1), H, {});
    if (a.family == H && b.family == F) add_term(r, Rational(-2), F, {});
    if (a.family == E && b.family == P) add_term(r, Rational(b.idx[0]), P, {b.idx[0] - 1});
    if (a.family == H && b.family == P) add_term(r, Rational(L2 - 2 * b.idx[0]), P, {b.idx[0]});
    if (a.family == F && b.family == P) add_term(r, Rational(L2 - b.idx[0]), P, {b.idx[0] + 1});
    return r;
  };
  return LiePresentation("g_ell", std::move(fams), half, {{"ell", ell}},
                         {"[h,e] = 2e", "[h,f] = -2f", "[e,f] = h", "[h,p_k] = 2(ell-k) p_k",
                          "[e,p_k] = k p_(k-1)", "[f,p_k] = (2ell-k) p_(k+1)"});
}

inline LiePresentation build_schrodinger(const std::map<std::string, Rational>& params) {
  int n = static_cast<int>(require_int_param(params, "n", 1, "schrodinger"));
  std::vector<Family> fams{singleton("e", false, false),      singleton("h", false, false),
                           singleton("f", false, false),      range_family("x", true, 1, n),
                           range_family("y", true, 1, n),     singleton("z", true, false)};
  const int E = 0, H = 1, F = 2, X = 3, Y = 4, Z = 5;
  auto half = [=](const BasisElem& a, const BasisElem& b) {
    LieElement r;
    if (a.family == E && b.family == H) add_term(r, Rational(-2), E, {});
    if (a.family == E && b.family == F) add_term(r, Rational(1), H, {});
    if (a.family == H && b.family == F) add_term(r, Rational(-2), F, {});
    if (a.family == E && b.family == Y) add_term(r, Rational(1), X, {b.idx[0]});
    if (a.family == H && b.family == X) add_term(r, Rational(1), X, {b.idx[0]});
    if (a.family == H && b.family == Y) add_term(r, Rational(-1), Y, {b.idx[0]});
    if (a.family == F && b.family == X) add_term(r, Rational(1), Y, {b.idx[0]});
    if (a.family == X && b.family == Y && a.idx[0] == b.idx[0]) add_term(r, Rational(1), Z, {});
    return r;
  };
  return LiePresentation("schrodinger", std::move(fams), half, {{"n", Rational(n)}},
                         {"[h,e] = 2e", "[h,f] = -2f", "[e,f] = h", "[h,x_i] = x_i",
                          "[e,y_i] = x_i", "[f,x_i] = y_i", "[h,y_i] = -y_i",
                          "[x_i,y_j] = delta(i,j) z"});
}

inline LiePresentation build_mirror_hv(const std::map<std::string, Rational>&) {
  // h stores n with printed index n + 1/2; grades are doubled to stay integral.
  std::vector<Family> fams{z_family("d", false, 2, 0), z_family("h", true, 2, 1, true),
                           singleton("c", true, true), singleton("l", true, true)};
  const int D = 0, Hh = 1, C = 2, Ll = 3;
  auto half = [=](const BasisElem& a, const BasisElem& b) {
    LieElement r;
    if (a.family == D && b.family == D) {
      long m = a.idx[0], n = b.idx[0];
      add_term(r, Rational(m - n), D, {static_cast<int>(m + n)});
      if (m + n == 0) add_term(r, Rational(m * m * m - m) / 12, C, {});
    }
    if (a.family == D && b.family == Hh) {
      long m = a.idx[0], n = b.idx[0];
      add_term(r, -(Rational(n) + Rational(1, 2)), Hh, {static_cast<int>(m + n)});
    }
    if (a.family == Hh && b.family == Hh) {
      long m = a.idx[0], n = b.idx[0];
      if (m + n + 1 == 0) add_term(r, Rational(m) + Rational(1, 2), Ll, {});
    }
    return r;
  };
  return LiePresentation("mirror_hv", std::move(fams), half, {},
                         {"[d_m,d_n] = (m-n) d_(m+n) + delta(m+n,0) (m^3-m)/12 c",
                          "[d_m,h_r] = -r h_(m+r)", "[h_r,h_s] = r delta(r+s,0) l",
                          "h index n stands for r = n + 1/2",
                          "grades are doubled: deg d_m = 2m, deg h_r = 2r (windows too)"});
}

inline LiePresentation build_hv(const std::map<std::string, Rational>&) {
  std::vector<Family> fams{z_family("L", false, 1, 0), z_family("I", true, 1, 0),
                           singleton("z1", true, true), singleton("z2", true, true),
                           singleton("z3", true, true)};
  const int L = 0, I = 1, Z1 = 2, Z2 = 3, Z3 = 4;
  auto half = [=](const BasisElem& a, const BasisElem& b) {
    LieElement r;
    if (a.family == L && b.family == L) {
      long m = a.idx[0], n = b.idx[0];
      add_term(r, Rational(n - m), L, {static_cast<int>(m + n)});
      if (m + n == 0) add_term(r, Rational(m * m * m - m) / 12, Z1, {});
    }
    if (a.family == L && b.family == I) {
      long m = a.idx[0], n = b.idx[0];
      add_term(r, Rational(n), I, {static_cast<int>(m + n)});
      if (m + n == 0) add_term(r, Rational(m * m + m), Z2, {});
    }
    if (a.family == I && b.family == I) {
      long m = a.idx[0], n = b.idx[0];
      if (m + n == 0) add_term(r, Rational(m), Z3, {});
    }
    return r;
  };
  return LiePresentation("hv", std::move(fams), half, {},
                         {"[L_m,L_n] = (n-m) L_(m+n) + delta(m+n,0) (m^3-m)/12 z1",
                          "[L_m,I_n] = n I_(m+n) + delta(m+n,0) (m^2+m) z2",
                          "[I_m,I_n] = m delta(m+n,0) z3"});
}

inline LiePresentation build_planar_galilean(const std::map<std::string, Rational>&) {
  std::vector<Family> fams{z_family("L", false, 1, 0), z_family("H", true, 1, 0),
                           z_family("I", true, 1, 0), z_family("J", true, 1, 0)};
  const int L = 0, H = 1, I = 2, J = 3;
  auto half = [=](const BasisElem& a, const BasisElem& b) {
    LieElement r;
    long n = a.idx[0], m = b.idx[0];
    if (a.family == L && b.family == L) add_term(r, Rational(m - n), L, {static_cast<int>(m + n)});
    if (a.family == L && b.family == H) add_term(r, Rational(m), H, {static_cast<int>(m + n)});
    if (a.family == L && b.family == I) add_term(r, Rational(m - n), I, {static_cast<int>(m + n)});
    if (a.family == L && b.family == J) add_term(r, Rational(m - n), J, {static_cast<int>(m + n)});
    if (a.family == H && b.family == I) add_term(r, Rational(1), I, {static_cast<int>(m + n)});
    if (a.family == H && b.family == J) add_term(r, Rational(-1), J, {static_cast<int>(m + n)});
    return r;
  };
  return LiePresentation("planar_galilean", std::move(fams), half, {},
                         {"[L_n,L_m] = (m-n) L_(m+n)", "[L_n,H_m] = m H_(m+n)",
                          "[L_n,I_m] = (m-n) I_(m+n)", "[L_n,J_m] = (m-n) J_(m+n)",
                          "[H_n,I_m] = I_(m+n)", "[H_n,J_m] = -J_(m+n)"});
}

inline LiePresentation build_w_ab(const std::map<std::string, Rational>& params) {
  Rational a = require_param(params, "a", "w_ab");
  Rational b = require_param(params, "b", "w_ab");
  std::vector<Family> fams{z_family("L", false, 1, 0), z_family("H", true, 1, 0)};
  const int L = 0, H = 1;
  auto half = [=](const BasisElem& x, const BasisElem& y) {
    LieElement r;
    long i = x.idx[0], j = y.idx[0];
    if (x.family == L && y.family == L) add_term(r, Rational(j - i), L, {static_cast<int>(i + j)});
    if (x.family == L && y.family == H)
      add_term(r, a + Rational(j) + b * Rational(i), H, {static_cast<int>(i + j)});
    return r;
  };
  return LiePresentation("w_ab", std::move(fams), half, {{"a", a}, {"b", b}},
                         {"[L_i,L_j] = (j-i) L_(i+j)", "[L_i,H_j] = (a+j+b*i) H_(i+j)",
                          "[H_i,H_j] = 0"});
}

inline LiePresentation build_w1pp(const std::map<std::string, Rational>& params) {
  int k = static_cast<int>(require_int_param(params, "k", 1, "w1pp"));
  Family d;
  d.name = "d";
  d.arity = 1;
  d.range_text = "Z>=0";
  d.in_range = [](const std::vector<int>& i) { return i[0] >= 0; };
  d.in_ideal = [k](const std::vector<int>& i) { return i[0] >= k; };
  d.grade = [](const std::vector<int>& i) -> std::optional<long> { return i[0]; };
  d.elems_with_grade = [](long g) {
    std::vector<std::vector<int>> out;
    if (g >= 0) out.push_back({static_cast<int>(g)});
    return out;
  };
  d.non_ideal_elems = [k] {
    std::vector<std::vector<int>> out;
    for (int i = 0; i < k; ++i) out.push_back({i});
    return out;
  };
  auto half = [](const BasisElem& a, const BasisElem& b) {
    LieElement r;
    long m = a.idx[0], n = b.idx[0];
    add_term(r, Rational(m - n), 0, {static_cast<int>(m + n)});
    return r;
  };
  return LiePresentation("w1pp", {std::move(d)}, half, {{"k", Rational(k)}},
                         {"[d_m,d_n] = (m-n) d_(m+n)  (m, n >= 0)",
                          "ideal p_k spanned by d_i with i >= k"});
}

inline LiePresentation build_wn_plus(const std::map<std::string, Rational>& params) {
  int n = static_cast<int>(require_int_param(params, "n", 2, "wn_plus"));
  // td(a_1..a_n, i) is t^a d/dt_i restricted to |a| >= 1 (the subalgebra of
  // nonnegative-degree derivations), graded by |a| - 1; the ideal is |a| >= 2.
  Family td;
  td.name = "td";
  td.arity = n + 1;
  td.range_text = "(a_1..a_" + std::to_string(n) + ",i): a_j >= 0, |a| >= 1, 1 <= i <= " +
                  std::to_string(n);
  td.in_range = [n](const std::vector<int>& v) {
    long total = 0;
    for (int j = 0; j < n; ++j) {
      if (v[j] < 0) return false;
      total += v[j];
    }
    return total >= 1 && v[n] >= 1 && v[n] <= n;
  };
  td.in_ideal = [n](const std::vector<int>& v) {
    long total = 0;
    for (int j = 0; j < n; ++j) total += v[j];
    return total >= 2;
  };
  td.grade = [n](const std::vector<int>& v) -> std::optional<long> {
    long total = 0;
    for (int j = 0; j < n; ++j) total += v[j];
    return total - 1;
  };
  td.elems_with_grade = [n](long g) {
    std::vector<std::vector<int>> out;
    if (g < 0) return out;
    for (auto& alpha : compositions(static_cast<int>(g) + 1, n))
      for (int i = 1; i <= n; ++i) {
        auto v = alpha;
        v.push_back(i);
        out.push_back(std::move(v));
      }
    return out;
  };
  td.non_ideal_elems = [n] {
    std::vector<std::vector<int>> out;
    for (int j = 0; j < n; ++j)
      for (int i = 1; i <= n; ++i) {
        std::vector<int> v(n + 1, 0);
        v[j] = 1;
        v[n] = i;
        out.push_back(std::move(v));
      }
    return out;
  };
  auto half = [n](const BasisElem& a, const BasisElem& b) {
    // [t^A d_i, t^B d_j] = B_i t^(A+B-e_i) d_j - A_j t^(A+B-e_j) d_i
    LieElement r;
    int i = a.idx[n], j = b.idx[n];
    int Bi = b.idx[i - 1], Aj = a.idx[j - 1];
    if (Bi != 0) {
      std::vector<int> v(n + 1);
      for (int t = 0; t < n; ++t) v[t] = a.idx[t] + b.idx[t];
      v[i - 1] -= 1;
      v[n] = j;
      add_term(r, Rational(Bi), 0, std::move(v));
    }
    if (Aj != 0) {
      std::vector<int> v(n + 1);
      for (int t = 0; t < n; ++t) v[t] = a.idx[t] + b.idx[t];
      v[j - 1] -= 1;
      v[n] = i;
      add_term(r, Rational(-Aj), 0, std::move(v));
    }
    return r;
  };
  return LiePresentation("wn_plus", {std::move(td)}, half, {{"n", Rational(n)}},
                         {"[t^A d_i, t^B d_j] = B_i t^(A+B-e_i) d_j - A_j t^(A+B-e_j) d_i",
                          "td(a_1..a_n,i) means t^a d/dt_i with |a| >= 1",
                          "ideal: |a| >= 2 (grade >= 1)"});
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"heisenberg", {"h1"}, "", "z (ideal is C z); z=1 is the standard choice",
       detail::build_heisenberg},
      {"g_ell", {"conformal_galilei", "galilei"}, "ell in (1/2)N",
       "p0..p_(2 ell); values free (the ideal is abelian)", detail::build_g_ell},
      {"schrodinger", {"sch"}, "n >= 1", "x1..xn, y1..yn free; z forced to 0",
       detail::build_schrodinger},
      {"mirror_hv", {"mirror-heisenberg-virasoro", "mhv"}, "",
       "h values free (finite or rule-based), c free, l forced to 0", detail::build_mirror_hv},
      {"hv", {"heisenberg_virasoro"}, "", "I values free, z1 and z2 free, z3 forced to 0",
       detail::build_hv},
      {"planar_galilean", {"planar"}, "", "H values free; I and J forced to 0",
       detail::build_planar_galilean},
      {"w_ab", {"W(a,b)", "wab"}, "a, b rational", "H values free (the ideal is abelian)",
       detail::build_w_ab},
      {"w1pp", {"W1++", "witt_borel"}, "k >= 1 (ideal p_k)",
       "d_k..d_(2k) free; d_i forced to 0 for i >= 2k+1", detail::build_w1pp},
      {"wn_plus", {"Wn+", "wnp"}, "n >= 2",
       "td values on grade 1 (|a| = 2) free; grade >= 2 forced to 0", detail::build_wn_plus},
  };
  return entries;
}

inline const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
    for (const auto& a : e.aliases)
      if (a == name) return e;
  }
  throw LieError("unknown algebra '" + std::string(name) + "' (see `algebra list`)");
}

inline LiePresentation build_algebra(std::string_view name,
                                     const std::map<std::string, Rational>& params = {}) {
  return catalog_entry(name).build(params);
}

}  // namespace qw
