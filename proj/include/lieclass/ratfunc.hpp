#pragma once

#include "poly.hpp"

#include <cctype>
#include <optional>
#include <string>

namespace lieclass {

/// Rational function of t over Q, kept reduced with monic denominator.
class RatFunc {
 public:
  RatFunc() : den_(Poly::constant(1)) {}
  RatFunc(const Q& q) : num_(Poly::constant(q)), den_(Poly::constant(1)) {}  // NOLINT
  RatFunc(long v) : RatFunc(Q(v)) {}                                         // NOLINT
  RatFunc(const Poly& n, const Poly& d) : num_(n), den_(d) { normalize(); }

  static RatFunc t() { return RatFunc(Poly::x(), Poly::constant(1)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool zero() const { return num_.zero(); }

  std::optional<Q> eval(const Q& t) const {
    Q d = den_.eval(t);
    if (sgn(d) == 0) return std::nullopt;
    return Q(num_.eval(t) / d);
  }
  /// Value at t = 0 if there is no pole there.
  std::optional<Q> limit0() const { return eval(Q(0)); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.zero()) throw std::domain_error("rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  std::string str() const {
    auto s = [](const Poly& p) {
      std::string x = p.str();
      for (auto& c : x)
        if (c == 'x') c = 't';
      return x;
    };
    if (den_.deg() == 0) return s(num_);
    return "(" + s(num_) + ")/(" + s(den_) + ")";
  }

 private:
  void normalize() {
    if (den_.zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.zero()) {
      den_ = Poly::constant(1);
      return;
    }
    Poly g = gcd(num_, den_);
    if (g.deg() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    Q l = den_.lead();
    num_ = Q(1 / l) * num_;
    den_ = Q(1 / l) * den_;
  }
  Poly num_, den_;
};

inline bool is_zero(const RatFunc& r) { return r.zero(); }

namespace detail {
class RatFuncParser {
 public:
  explicit RatFuncParser(const std::string& s) : s_(s) {}
  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("malformed rational function '" + s_ + "': " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else return r;
    }
  }
  RatFunc term() {
    RatFunc r = unary();
    for (;;) {
      if (eat('*')) r *= unary();
      else if (eat('/')) {
        RatFunc d = unary();
        if (d.zero()) fail("division by zero");
        r /= d;
      } else return r;
    }
  }
  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    RatFunc b = atom();
    if (eat('^')) {
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("exponent must be a non-negative integer");
      int e = std::stoi(s_.substr(st, i_ - st));
      RatFunc r(1);
      for (int k = 0; k < e; ++k) r *= b;
      return r;
    }
    return b;
  }
  RatFunc atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      RatFunc r = expr();
      if (!eat(')')) fail("missing ')'");
      return r;
    }
    if (c == 't') {
      ++i_;
      return RatFunc::t();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return RatFunc(Q(mpz_class(s_.substr(st, i_ - st))));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
  std::string s_;
  std::size_t i_ = 0;
};
}  // namespace detail

/// Parse expressions in t such as "1/t", "(1-t)/2", "t^2+3".
inline RatFunc parse_ratfunc(const std::string& s) { return detail::RatFuncParser(s).parse(); }

}  // namespace lieclass
