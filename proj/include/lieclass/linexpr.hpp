#pragma once

#include "rational.hpp"

#include <cctype>
#include <map>
#include <string>

namespace lieclass {

/// Affine expression c + sum_k coef_k * name_k in named parameters.
struct LinExpr {
  Q constant = 0;
  std::map<std::string, Q> coef;

  template <class F>
  F eval(const std::map<std::string, F>& params) const {
    F r(constant);
    for (const auto& [name, c] : coef) {
      auto it = params.find(name);
      if (it == params.end()) throw std::invalid_argument("missing parameter '" + name + "'");
      r += F(c) * it->second;
    }
    return r;
  }
  bool is_constant() const { return coef.empty(); }
};

inline LinExpr parse_linexpr(const std::string& s) {
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { return ParseError("malformed expression '" + s + "': " + why); };
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto number = [&]() {
    std::size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i < s.size() && s[i] == '/') {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    }
    return parse_rational(s.substr(st, i - st));
  };
  LinExpr e;
  bool first = true;
  for (;;) {
    skip();
    if (i >= s.size()) {
      if (first) throw fail("empty");
      break;
    }
    int sg = 1;
    if (s[i] == '+' || s[i] == '-') {
      sg = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    Q c = sg;
    std::string name;
    for (;;) {
      skip();
      if (i >= s.size()) throw fail("dangling operator");
      if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        c *= number();
      } else if (std::isalpha(static_cast<unsigned char>(s[i]))) {
        if (!name.empty()) throw fail("non-linear term");
        std::size_t st = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        name = s.substr(st, i - st);
      } else {
        throw fail("unexpected '" + std::string(1, s[i]) + "'");
      }
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    if (name.empty()) e.constant += c;
    else e.coef[name] += c;
    first = false;
  }
  for (auto it = e.coef.begin(); it != e.coef.end();) {
    if (sgn(it->second) == 0) it = e.coef.erase(it);
    else ++it;
  }
  return e;
}

/// Comparison constraint "lhs op rhs" with op in == != < <= > >=.
struct Constraint {
  LinExpr diff;  // lhs - rhs
  std::string op;
  std::string text;

  template <class F>
  bool holds(const std::map<std::string, F>& params) const {
    int s = sign(diff.eval(params));
    if (op == "==") return s == 0;
    if (op == "!=") return s != 0;
    if (op == "<") return s < 0;
    if (op == "<=") return s <= 0;
    if (op == ">") return s > 0;
    return s >= 0;
  }
};

inline Constraint parse_constraint(const std::string& s) {
  static const char* ops[] = {"==", "!=", "<=", ">=", "<", ">"};
  for (const char* op : ops) {
    auto p = s.find(op);
    if (p == std::string::npos) continue;
    LinExpr l = parse_linexpr(s.substr(0, p));
    LinExpr r = parse_linexpr(s.substr(p + std::string(op).size()));
    LinExpr d = l;
    d.constant -= r.constant;
    for (const auto& [k, v] : r.coef) d.coef[k] -= v;
    for (auto it = d.coef.begin(); it != d.coef.end();) {
      if (sgn(it->second) == 0) it = d.coef.erase(it);
      else ++it;
    }
    return {d, op, s};
  }
  throw ParseError("constraint without comparison operator: '" + s + "'");
}

}  // namespace lieclass
