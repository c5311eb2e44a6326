#pragma once

#include "qw/expr.hpp"
#include "qw/lie.hpp"

#include <fstream>
#include <sstream>

namespace qw {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace algfile {

struct RangeSpec {
  enum Kind { All, AtLeast, Interval } kind = All;
  long lo = 0, hi = 0;

  bool contains(long v) const {
    switch (kind) {
      case All: return true;
      case AtLeast: return v >= lo;
      case Interval: return v >= lo && v <= hi;
    }
    return false;
  }
  bool finite() const { return kind == Interval; }
  std::string text() const {
    switch (kind) {
      case All: return "Z";
      case AtLeast: return "Z>=" + std::to_string(lo);
      case Interval: return std::to_string(lo) + ".." + std::to_string(hi);
    }
    return "?";
  }
};

struct FamilySpec {
  std::string name;
  std::vector<RangeSpec> ranges;  // arity = ranges.size()
  std::optional<Expr> grade;
  bool ideal = false;
  bool half_shift = false;
};

struct BracketTerm {
  Expr coeff;
  std::string target_family;
  std::vector<Expr> target_idx;
};

struct BracketRule {
  std::string fam_a, fam_b;
  std::vector<std::string> vars_a, vars_b;
  std::vector<BracketTerm> terms;
  std::string source_line;
};

struct Tokens {
  std::vector<std::string> parts;
  static Tokens split_ws(const std::string& line) {
    Tokens t;
    std::istringstream is(line);
    std::string w;
    while (is >> w) t.parts.push_back(w);
    return t;
  }
};

inline RangeSpec parse_range(const std::string& s, int lineno) {
  RangeSpec r;
  auto fail = [&](const std::string& m) {
    throw FormatError("algebra file line " + std::to_string(lineno) + ": " + m);
  };
  if (s == "Z") {
    r.kind = RangeSpec::All;
  } else if (s.rfind("Z>=", 0) == 0) {
    r.kind = RangeSpec::AtLeast;
    try {
      r.lo = std::stol(s.substr(3));
    } catch (...) {
      fail("bad range '" + s + "'");
    }
  } else if (auto dots = s.find(".."); dots != std::string::npos) {
    r.kind = RangeSpec::Interval;
    try {
      r.lo = std::stol(s.substr(0, dots));
      r.hi = std::stol(s.substr(dots + 2));
    } catch (...) {
      fail("bad range '" + s + "'");
    }
    if (r.hi < r.lo) fail("empty range '" + s + "'");
  } else {
    fail("bad range '" + s + "' (expected Z, Z>=k or a..b)");
  }
  return r;
}

/// Splits on top-level '+'/'-' (parentheses and braces shield), keeping signs.
inline std::vector<std::string> split_terms(const std::string& rhs, int lineno) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (size_t i = 0; i < rhs.size(); ++i) {
    char c = rhs[i];
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (depth == 0 && (c == '+' || c == '-') && !cur.empty() &&
        cur.find_first_not_of(" \t") != std::string::npos) {
      // a '-' directly after an operator or '^' is a unary sign, not a split
      size_t last = cur.find_last_not_of(" \t");
      char prev = cur[last];
      if (prev != '*' && prev != '/' && prev != '^' && prev != '(' && prev != '+' && prev != '-') {
        out.push_back(cur);
        cur.clear();
        cur.push_back(c);
        continue;
      }
    }
    cur.push_back(c);
  }
  if (depth != 0)
    throw FormatError("algebra file line " + std::to_string(lineno) + ": unbalanced brackets");
  if (cur.find_first_not_of(" \t") != std::string::npos) out.push_back(cur);
  return out;
}

/// One bracket term: [coefficient '*'] FAMILY '{' idx-exprs '}' at the end.
inline BracketTerm parse_term(std::string term, int lineno) {
  auto fail = [&](const std::string& m) {
    throw FormatError("algebra file line " + std::to_string(lineno) + ": " + m + " in '" + term +
                      "'");
  };
  size_t close = term.find_last_not_of(" \t");
  if (close == std::string::npos || term[close] != '}') fail("term must end with FAMILY{...}");
  size_t open = term.rfind('{', close);
  if (open == std::string::npos) fail("missing '{'");
  size_t name_end = open;
  while (name_end > 0 && (term[name_end - 1] == ' ' || term[name_end - 1] == '\t')) --name_end;
  size_t name_start = name_end;
  while (name_start > 0 && (std::isalnum(static_cast<unsigned char>(term[name_start - 1])) ||
                            term[name_start - 1] == '_'))
    --name_start;
  if (name_start == name_end) fail("missing target family name");

  BracketTerm out;
  out.target_family = term.substr(name_start, name_end - name_start);
  std::string args = term.substr(open + 1, close - open - 1);
  {
    int depth = 0;
    std::string cur;
    for (char c : args) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        out.target_idx.push_back(Expr::parse(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (cur.find_first_not_of(" \t") != std::string::npos)
      out.target_idx.push_back(Expr::parse(cur));
  }
  std::string coeff = term.substr(0, name_start);
  size_t tail = coeff.find_last_not_of(" \t");
  if (tail != std::string::npos && coeff[tail] == '*') coeff = coeff.substr(0, tail);
  if (auto lead = coeff.find_first_not_of(" \t"); lead != std::string::npos && coeff[lead] == '+')
    coeff = coeff.substr(lead + 1);
  if (coeff.find_first_not_of(" \t") == std::string::npos)
    coeff = "1";
  else if (coeff.find_first_not_of(" \t-") == std::string::npos)
    coeff = "-1";
  out.coeff = Expr::parse(coeff);
  return out;
}

}  // namespace algfile

/// Parses the plain-text algebra format (see docs/algebra-format.md) into a
/// presentation. Bracket rules are consulted in written orientation and
/// antisymmetrized; unlisted pairs commute. Extra parameter values override
/// the file's `param` defaults.
inline LiePresentation parse_algebra(std::istream& in,
                                     const std::map<std::string, Rational>& overrides = {},
                                     const std::string& origin = "<stream>") {
  using namespace algfile;
  std::string algebra_name;
  std::map<std::string, Rational> params;
  std::vector<FamilySpec> fams;
  std::map<std::string, int> fam_ids;
  std::vector<BracketRule> rules;
  std::vector<std::string> rule_texts;

  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& m) {
    throw FormatError(origin + " line " + std::to_string(lineno) + ": " + m);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    auto toks = Tokens::split_ws(line).parts;
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "algebra") {
      if (toks.size() != 2) fail("usage: algebra NAME");
      algebra_name = toks[1];
    } else if (kw == "param") {
      if (toks.size() != 4 || toks[2] != "=") fail("usage: param NAME = RATIONAL");
      params[toks[1]] = parse_rational(toks[3]);
    } else if (kw == "family") {
      if (toks.size() < 2) fail("usage: family NAME [index ...] [grade ...] [ideal] [halfshift]");
      FamilySpec f;
      f.name = toks[1];
      if (fam_ids.count(f.name)) fail("duplicate family '" + f.name + "'");
      for (size_t i = 2; i < toks.size(); ++i) {
        if (toks[i] == "index") {
          if (++i >= toks.size()) fail("index needs a range list");
          std::istringstream rs(toks[i]);
          std::string one;
          while (std::getline(rs, one, ',')) f.ranges.push_back(parse_range(one, lineno));
        } else if (toks[i] == "grade") {
          if (++i >= toks.size()) fail("grade needs an expression");
          std::string expr = toks[i];
          while (i + 1 < toks.size() && toks[i + 1] != "ideal" && toks[i + 1] != "halfshift" &&
                 toks[i + 1] != "index")
            expr += toks[++i];
          f.grade = Expr::parse(expr);
        } else if (toks[i] == "ideal") {
          f.ideal = true;
        } else if (toks[i] == "halfshift") {
          f.half_shift = true;
        } else {
          fail("unknown family attribute '" + toks[i] + "'");
        }
      }
      fam_ids[f.name] = static_cast<int>(fams.size());
      fams.push_back(std::move(f));
    } else if (kw == "bracket") {
      auto lb = line.find('['), rb = line.find(']');
      auto eq = line.find('=', rb == std::string::npos ? 0 : rb);
      if (lb == std::string::npos || rb == std::string::npos || eq == std::string::npos)
        fail("usage: bracket [FAM vars, FAM vars] = terms");
      std::string head = line.substr(lb + 1, rb - lb - 1);
      auto comma = head.find(',');
      if (comma == std::string::npos) fail("bracket head needs two comma-separated slots");
      BracketRule rule;
      auto parse_slot = [&](const std::string& slot, std::string& fam,
                            std::vector<std::string>& vars) {
        auto p = Tokens::split_ws(slot).parts;
        if (p.empty()) fail("empty bracket slot");
        fam = p[0];
        vars.assign(p.begin() + 1, p.end());
        if (!fam_ids.count(fam)) fail("unknown family '" + fam + "' (declare it first)");
        size_t arity = fams[static_cast<size_t>(fam_ids[fam])].ranges.size();
        if (vars.size() != arity)
          fail("family '" + fam + "' has arity " + std::to_string(arity) + ", got " +
               std::to_string(vars.size()) + " variables");
      };
      parse_slot(head.substr(0, comma), rule.fam_a, rule.vars_a);
      parse_slot(head.substr(comma + 1), rule.fam_b, rule.vars_b);
      std::string rhs = line.substr(eq + 1);
      rule.source_line = line;
      if (rhs.find_first_not_of(" \t0") != std::string::npos) {
        for (auto& term : split_terms(rhs, lineno)) {
          auto bt = parse_term(term, lineno);
          if (!fam_ids.count(bt.target_family))
            fail("unknown target family '" + bt.target_family + "'");
          size_t arity = fams[static_cast<size_t>(fam_ids[bt.target_family])].ranges.size();
          if (bt.target_idx.size() != arity)
            fail("target '" + bt.target_family + "' needs " + std::to_string(arity) + " indices");
          rule.terms.push_back(std::move(bt));
        }
      }
      for (const auto& r : rules) {
        bool same = (r.fam_a == rule.fam_a && r.fam_b == rule.fam_b) ||
                    (r.fam_a == rule.fam_b && r.fam_b == rule.fam_a);
        if (same) fail("duplicate bracket rule for (" + rule.fam_a + ", " + rule.fam_b + ")");
      }
      rule_texts.push_back(line.substr(line.find_first_not_of(" \t")));
      rules.push_back(std::move(rule));
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  if (algebra_name.empty()) throw FormatError(origin + ": missing 'algebra NAME' line");
  if (fams.empty()) throw FormatError(origin + ": no families declared");
  for (const auto& [k, v] : overrides) params[k] = v;

  // ---- lower the specs into Family objects -------------------------------
  std::vector<Family> families;
  for (const auto& fs : fams) {
    Family f;
    f.name = fs.name;
    f.arity = static_cast<int>(fs.ranges.size());
    f.half_shift = fs.half_shift;
    {
      std::string rt;
      for (size_t i = 0; i < fs.ranges.size(); ++i) rt += (i ? "," : "") + fs.ranges[i].text();
      f.range_text = fs.ranges.empty() ? "singleton" : rt;
    }
    auto ranges = fs.ranges;
    f.in_range = [ranges](const std::vector<int>& idx) {
      for (size_t i = 0; i < ranges.size(); ++i)
        if (!ranges[i].contains(idx[i])) return false;
      return true;
    };
    bool ideal = fs.ideal;
    f.in_ideal = [ideal](const std::vector<int>&) { return ideal; };

    auto bind = [params](const std::vector<int>& idx) {
      Expr::Env env;
      for (const auto& [k, v] : params) env[k] = v;
      for (size_t i = 0; i < idx.size(); ++i) env["i" + std::to_string(i + 1)] = Rational(idx[i]);
      if (idx.size() == 1) env["i"] = Rational(idx[0]);
      return env;
    };
    if (fs.grade) {
      Expr ge = *fs.grade;
      f.grade = [ge, bind](const std::vector<int>& idx) -> std::optional<long> {
        Rational v = ge.eval(bind(idx));
        if (!is_integer(v)) throw FormatError("grade expression is not integral");
        return to_long(v);
      };
    } else if (fs.ranges.empty()) {
      f.grade = [](const std::vector<int>&) -> std::optional<long> { return 0; };
    }

    bool finite = true;
    for (const auto& r : fs.ranges) finite = finite && r.finite();
    if (finite) {
      auto all = std::make_shared<std::vector<std::vector<int>>>();
      std::vector<int> cur(fs.ranges.size(), 0);
      std::function<void(size_t)> rec = [&](size_t pos) {
        if (pos == fs.ranges.size()) {
          all->push_back(cur);
          return;
        }
        for (long v = fs.ranges[pos].lo; v <= fs.ranges[pos].hi; ++v) {
          cur[pos] = static_cast<int>(v);
          rec(pos + 1);
        }
      };
      if (fs.ranges.empty())
        all->push_back({});
      else
        rec(0);
      f.all_elems = [all] { return *all; };
      f.non_ideal_elems = [all, ideal] {
        return ideal ? std::vector<std::vector<int>>{} : *all;
      };
      if (f.grade) {
        auto grade = f.grade;
        f.elems_with_grade = [all, grade](long d) {
          std::vector<std::vector<int>> out;
          for (const auto& idx : *all)
            if (grade(idx) == d) out.push_back(idx);
          return out;
        };
      }
    } else if (fs.ranges.size() == 1 && fs.grade) {
      // affine single-index grade: invert for slice enumeration
      Expr ge = *fs.grade;
      auto at = [ge, bind](long i) { return ge.eval(bind({static_cast<int>(i)})); };
      Rational g0 = at(0), g1 = at(1), g2 = at(2);
      if (g1 - g0 != g2 - g1 || g1 == g0)
        throw FormatError("family '" + fs.name +
                          "': grade must be affine with nonzero slope over an infinite range");
      Rational slope = g1 - g0;
      auto range = fs.ranges[0];
      f.elems_with_grade = [slope, g0, range](long d) {
        std::vector<std::vector<int>> out;
        Rational i = (Rational(d) - g0) / slope;
        if (is_integer(i) && range.contains(to_long(i)))
          out.push_back({static_cast<int>(to_long(i))});
        return out;
      };
      if (ideal) f.non_ideal_elems = [] { return std::vector<std::vector<int>>{}; };
    }
    families.push_back(std::move(f));
  }

  // ---- bracket oracle -----------------------------------------------------
  struct CompiledRule {
    int fam_a, fam_b;
    std::vector<std::string> vars_a, vars_b;
    std::vector<std::tuple<Expr, int, std::vector<Expr>>> terms;
  };
  auto compiled = std::make_shared<std::vector<CompiledRule>>();
  for (const auto& r : rules) {
    CompiledRule c;
    c.fam_a = fam_ids[r.fam_a];
    c.fam_b = fam_ids[r.fam_b];
    c.vars_a = r.vars_a;
    c.vars_b = r.vars_b;
    for (const auto& t : r.terms)
      c.terms.push_back({t.coeff, fam_ids[t.target_family], t.target_idx});
    compiled->push_back(std::move(c));
  }
  auto base_env = std::make_shared<Expr::Env>();
  for (const auto& [k, v] : params) (*base_env)[k] = Rational(v);

  LiePresentation::HalfBracket half = [compiled, base_env](const BasisElem& a,
                                                           const BasisElem& b) {
    LieElement out;
    for (const auto& rule : *compiled) {
      bool forward = rule.fam_a == a.family && rule.fam_b == b.family;
      bool backward = rule.fam_a == b.family && rule.fam_b == a.family;
      if (rule.fam_a == rule.fam_b) backward = false;  // canonical orientation only
      if (!forward && !backward) continue;
      const BasisElem& first = forward ? a : b;
      const BasisElem& second = forward ? b : a;
      Expr::Env env = *base_env;
      for (size_t i = 0; i < rule.vars_a.size(); ++i) env[rule.vars_a[i]] = Rational(first.idx[i]);
      for (size_t i = 0; i < rule.vars_b.size(); ++i)
        env[rule.vars_b[i]] = Rational(second.idx[i]);
      Rational sign = forward ? Rational(1) : Rational(-1);
      for (const auto& [coeff, fam, idx_exprs] : rule.terms) {
        Rational c = coeff.eval(env) * sign;
        if (c == 0) continue;
        std::vector<int> idx;
        for (const auto& e : idx_exprs) {
          Rational v = e.eval(env);
          if (!is_integer(v)) throw FormatError("bracket target index is not integral");
          idx.push_back(static_cast<int>(to_long(v)));
        }
        out.add(BasisElem{fam, std::move(idx)}, c);
      }
      break;
    }
    return out;
  };

  return LiePresentation(algebra_name, std::move(families), std::move(half), std::move(params),
                         std::move(rule_texts));
}

inline LiePresentation parse_algebra_file(const std::string& path,
                                          const std::map<std::string, Rational>& overrides = {}) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open algebra file '" + path + "'");
  return parse_algebra(in, overrides, path);
}

}  // namespace qw
