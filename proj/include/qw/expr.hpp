#pragma once

#include "qw/rational.hpp"

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qw {

struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arithmetic expressions over Q in named variables, used for bracket-rule
/// coefficients, grading rules and rule-based phi values.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | power
///   power  := atom ['^' unary]            (right-associative)
///   atom   := integer | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
///
/// The only builtin is delta(a,b) = 1 if a = b else 0. '^' needs an integer
/// exponent at evaluation time (the base may be rational; negative exponents
/// invert). Rational constants are spelled with '/', e.g. (m^3-m)/12.
class Expr {
 public:
  using Env = std::map<std::string, Rational>;

  Expr() = default;

  static Expr parse(std::string_view text) {
    Expr e;
    e.text_ = std::string(text);
    Parser p{e, text, 0};
    e.root_ = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
  }

  Rational eval(const Env& env) const {
    if (root_ < 0) throw ExprError("evaluating an empty expression");
    return eval_node(root_, env);
  }

  std::set<std::string> variables() const {
    std::set<std::string> out;
    for (const Node& n : nodes_)
      if (n.kind == Kind::Var) out.insert(n.name);
    return out;
  }

  const std::string& text() const { return text_; }
  bool empty() const { return root_ < 0; }

 private:
  enum class Kind { Num, Var, Add, Sub, Mul, Div, Neg, Pow, Delta };

  struct Node {
    Kind kind;
    Rational value;
    std::string name;
    int a = -1, b = -1;
  };

  std::vector<Node> nodes_;
  int root_ = -1;
  std::string text_;

  int make(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  Rational eval_node(int i, const Env& env) const {
    const Node& n = nodes_[i];
    switch (n.kind) {
      case Kind::Num:
        return n.value;
      case Kind::Var: {
        auto it = env.find(n.name);
        if (it == env.end()) throw ExprError("unbound variable '" + n.name + "' in " + text_);
        return it->second;
      }
      case Kind::Add:
        return eval_node(n.a, env) + eval_node(n.b, env);
      case Kind::Sub:
        return eval_node(n.a, env) - eval_node(n.b, env);
      case Kind::Mul:
        return eval_node(n.a, env) * eval_node(n.b, env);
      case Kind::Div: {
        Rational d = eval_node(n.b, env);
        if (d == 0) throw ExprError("division by zero in " + text_);
        return eval_node(n.a, env) / d;
      }
      case Kind::Neg:
        return -eval_node(n.a, env);
      case Kind::Pow: {
        Rational e = eval_node(n.b, env);
        if (!is_integer(e)) throw ExprError("non-integer exponent in " + text_);
        return rat_pow(eval_node(n.a, env), to_long(e));
      }
      case Kind::Delta:
        return eval_node(n.a, env) == eval_node(n.b, env) ? Rational(1) : Rational(0);
    }
    throw ExprError("corrupt expression node");
  }

  struct Parser {
    Expr& e;
    std::string_view s;
    size_t pos;

    [[noreturn]] void fail(const std::string& msg) const {
      throw ExprError("expression error at offset " + std::to_string(pos) + ": " + msg +
                      " in '" + std::string(s) + "'");
    }

    void skip_ws() {
      while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }

    bool eat(char c) {
      skip_ws();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }

    char peek() {
      skip_ws();
      return pos < s.size() ? s[pos] : '\0';
    }

    int parse_expr() {
      int lhs = parse_term();
      while (true) {
        if (eat('+'))
          lhs = e.make({Kind::Add, {}, {}, lhs, parse_term()});
        else if (eat('-'))
          lhs = e.make({Kind::Sub, {}, {}, lhs, parse_term()});
        else
          return lhs;
      }
    }

    int parse_term() {
      int lhs = parse_unary();
      while (true) {
        if (eat('*'))
          lhs = e.make({Kind::Mul, {}, {}, lhs, parse_unary()});
        else if (eat('/'))
          lhs = e.make({Kind::Div, {}, {}, lhs, parse_unary()});
        else
          return lhs;
      }
    }

    int parse_unary() {
      if (eat('-')) return e.make({Kind::Neg, {}, {}, parse_unary(), -1});
      return parse_power();
    }

    int parse_power() {
      int base = parse_atom();
      if (eat('^')) return e.make({Kind::Pow, {}, {}, base, parse_unary()});
      return base;
    }

    int parse_atom() {
      skip_ws();
      if (pos >= s.size()) fail("unexpected end of input");
      char c = s[pos];
      if (c == '(') {
        ++pos;
        int inner = parse_expr();
        if (!eat(')')) fail("expected ')'");
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return e.make({Kind::Num, Rational(std::string(s.substr(start, pos - start))), {}, -1, -1});
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
          ++pos;
        std::string name(s.substr(start, pos - start));
        if (peek() == '(') {
          if (name != "delta") fail("unknown function '" + name + "'");
          eat('(');
          int a = parse_expr();
          if (!eat(',')) fail("delta takes two arguments");
          int b = parse_expr();
          if (!eat(')')) fail("expected ')'");
          return e.make({Kind::Delta, {}, {}, a, b});
        }
        return e.make({Kind::Var, {}, std::move(name), -1, -1});
      }
      fail(std::string("unexpected character '") + c + "'");
    }
  };
};

}  // namespace qw
