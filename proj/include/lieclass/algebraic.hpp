#pragma once

#include "poly.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace lieclass {

/// Exact real number: a rational, or the unique root of a squarefree
/// polynomial inside an open rational interval whose endpoints are not roots.
class RealNum {
 public:
  RealNum() : rational_(true), q_(0) {}
  RealNum(const Q& q) : rational_(true), q_(q) {}  // NOLINT implicit on purpose
  RealNum(long v) : rational_(true), q_(v) {}      // NOLINT

  /// p has exactly one root in (lo, hi) and p(lo), p(hi) != 0.
  static RealNum root_of(const Poly& p, const Q& lo, const Q& hi) {
    Poly s = squarefree_part(p);
    if (auto r = rational_root_in(s, lo, hi)) return RealNum(*r);
    for (const Q& q : rational_roots(s)) s = s / Poly::linear_root(q);
    RealNum x;
    x.rational_ = false;
    x.p_ = s.primitive();
    x.lo_ = lo;
    x.hi_ = hi;
    return x;
  }

  bool is_rational() const { return rational_; }
  const Q& rational() const {
    if (!rational_) throw std::logic_error("irrational value has no rational form");
    return q_;
  }
  Poly poly() const { return rational_ ? Poly::linear_root(q_) : p_; }
  Q lo() const { return rational_ ? q_ : lo_; }
  Q hi() const { return rational_ ? q_ : hi_; }

  /// Same number with its polynomial cut down to gcd(p, m); m must vanish here.
  RealNum reduced(const Poly& m) const {
    if (rational_) return *this;
    Poly g = gcd(p_, m);
    if (g.deg() < 1) throw std::logic_error("reduction polynomial does not vanish at this number");
    RealNum x = *this;
    x.p_ = g.primitive();
    if (x.p_.deg() == 1) return RealNum(Q(-x.p_[0] / x.p_[1]));
    return x;
  }

  /// Halve the isolating interval (no-op for rationals).
  void refine() {
    if (rational_) return;
    Q ex;
    if (bisect_root(p_, lo_, hi_, ex)) *this = RealNum(ex);
  }

  double approx() const {
    if (rational_) return q_.get_d();
    RealNum t = *this;
    for (int i = 0; i < 64 && !t.rational_; ++i) t.refine();
    if (t.rational_) return t.q_.get_d();
    return Q((t.lo_ + t.hi_) / 2).get_d();
  }

  std::string str() const {
    if (rational_) return q_.get_str();
    return "root(" + p_.str() + ", " + lo_.get_str() + ", " + hi_.get_str() + ")";
  }

  int sign() const { return compare(*this, RealNum(0)); }
  RealNum abs() const { return sign() < 0 ? -*this : *this; }

  friend RealNum operator-(const RealNum& a) {
    if (a.rational_) return RealNum(Q(-a.q_));
    RealNum r = a;
    r.p_ = a.p_.negate_var().primitive();
    r.lo_ = -a.hi_;
    r.hi_ = -a.lo_;
    return r;
  }

  friend RealNum operator+(const RealNum& a, const RealNum& b) {
    if (a.rational_ && b.rational_) return RealNum(Q(a.q_ + b.q_));
    if (b.rational_) return shifted(a, b.q_);
    if (a.rational_) return shifted(b, a.q_);
    QMatrix ca = companion(a.p_), cb = companion(b.p_);
    QMatrix m = kron(ca, QMatrix::identity(cb.rows())) + kron(QMatrix::identity(ca.rows()), cb);
    return select(charpoly(m), a, b, [](const Q& alo, const Q& ahi, const Q& blo, const Q& bhi) {
      return std::make_pair(Q(alo + blo), Q(ahi + bhi));
    });
  }
  friend RealNum operator-(const RealNum& a, const RealNum& b) { return a + (-b); }

  friend RealNum operator*(const RealNum& a, const RealNum& b) {
    if (a.rational_ && b.rational_) return RealNum(Q(a.q_ * b.q_));
    if (b.rational_) return scaled(a, b.q_);
    if (a.rational_) return scaled(b, a.q_);
    QMatrix m = kron(companion(a.p_), companion(b.p_));
    return select(charpoly(m), a, b, [](const Q& alo, const Q& ahi, const Q& blo, const Q& bhi) {
      Q c[4] = {alo * blo, alo * bhi, ahi * blo, ahi * bhi};
      return std::make_pair(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
    });
  }

  RealNum inverse() const {
    if (sign() == 0) throw std::domain_error("division by zero");
    if (rational_) return RealNum(Q(1 / q_));
    RealNum t = *this;
    while (sgn(t.lo_) != sgn(t.hi_)) t.refine();
    if (t.rational_) return RealNum(Q(1 / t.q_));
    RealNum r;
    r.rational_ = false;
    r.p_ = t.p_.reversed().primitive();
    r.lo_ = 1 / t.hi_;
    r.hi_ = 1 / t.lo_;
    return r;
  }
  friend RealNum operator/(const RealNum& a, const RealNum& b) { return a * b.inverse(); }

  RealNum sqrt() const {
    int s = sign();
    if (s < 0) throw std::domain_error("square root of a negative number");
    if (s == 0) return RealNum(0);
    if (rational_) {
      Q r;
      if (exact_root(q_, 2, r)) return RealNum(r);
    }
    Poly big = poly().square_var();
    Poly sq = squarefree_part(big);
    auto roots = isolate_real_roots(sq);
    RealNum a = *this;
    for (int iter = 0; iter < 100000; ++iter) {
      int found = -1, count = 0;
      for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& r = roots[i];
        Q rl = r.exact ? r.value : r.lo, rh = r.exact ? r.value : r.hi;
        if (sgn(rh) <= 0) continue;
        if (sgn(rl) < 0) rl = 0;
        Q sl = rl * rl, sh = rh * rh;
        bool hit = r.exact ? (a.lo() <= sl && sl <= a.hi()) : (sl < a.hi() && a.lo() < sh);
        if (hit) {
          found = static_cast<int>(i);
          ++count;
        }
      }
      if (count == 1) return from_interval(sq, roots[found]);
      a.refine();
      for (auto& r : roots) refine_interval(sq, r);
    }
    throw std::logic_error("square root selection did not converge");
  }

  friend int compare(const RealNum& a, const RealNum& b) {
    if (a.rational_ && b.rational_) return cmp(a.q_, b.q_);
    if (equal(a, b)) return 0;
    RealNum x = a, y = b;
    for (;;) {
      if (x.hi() < y.lo()) return -1;
      if (y.hi() < x.lo()) return 1;
      x.refine();
      y.refine();
    }
  }
  friend bool operator==(const RealNum& a, const RealNum& b) { return compare(a, b) == 0; }
  friend bool operator!=(const RealNum& a, const RealNum& b) { return compare(a, b) != 0; }
  friend bool operator<(const RealNum& a, const RealNum& b) { return compare(a, b) < 0; }
  friend bool operator<=(const RealNum& a, const RealNum& b) { return compare(a, b) <= 0; }
  friend bool operator>(const RealNum& a, const RealNum& b) { return compare(a, b) > 0; }
  friend bool operator>=(const RealNum& a, const RealNum& b) { return compare(a, b) >= 0; }

  RealNum& operator+=(const RealNum& o) { return *this = *this + o; }
  RealNum& operator-=(const RealNum& o) { return *this = *this - o; }
  RealNum& operator*=(const RealNum& o) { return *this = *this * o; }
  RealNum& operator/=(const RealNum& o) { return *this = *this / o; }

 private:
  static bool equal(const RealNum& a, const RealNum& b) {
    if (a.rational_ && b.rational_) return a.q_ == b.q_;
    if (a.rational_ || b.rational_) {
      const RealNum& r = a.rational_ ? a : b;
      const RealNum& s = a.rational_ ? b : a;
      return s.p_.sign_at(r.q_) == 0 && s.lo_ < r.q_ && r.q_ < s.hi_;
    }
    Poly g = gcd(a.p_, b.p_);
    if (g.deg() < 1) return false;
    Q lo = std::max(a.lo_, b.lo_), hi = std::min(a.hi_, b.hi_);
    if (!(lo < hi)) return false;
    return count_roots(sturm_sequence(g), lo, hi) > 0;
  }

  static RealNum shifted(const RealNum& a, const Q& q) {
    // p(x - q) by Horner on polynomials
    Poly lin(std::vector<Q>{Q(-q), Q(1)});
    Poly r;
    for (int i = a.p_.deg(); i >= 0; --i) r = r * lin + Poly::constant(a.p_[i]);
    RealNum x;
    x.rational_ = false;
    x.p_ = r.primitive();
    x.lo_ = a.lo_ + q;
    x.hi_ = a.hi_ + q;
    return x;
  }
  static RealNum scaled(const RealNum& a, const Q& q) {
    if (sgn(q) == 0) return RealNum(0);
    RealNum x;
    x.rational_ = false;
    x.p_ = a.p_.scale_var(Q(1 / q)).primitive();
    Q l = a.lo_ * q, h = a.hi_ * q;
    x.lo_ = std::min(l, h);
    x.hi_ = std::max(l, h);
    return x;
  }

  static void refine_interval(const Poly& p, RootInterval& r) {
    if (r.exact) return;
    Q ex;
    if (bisect_root(p, r.lo, r.hi, ex)) {
      r.exact = true;
      r.value = ex;
    }
  }
  static RealNum from_interval(const Poly& p, const RootInterval& r) {
    if (r.exact) return RealNum(r.value);
    return root_of(p, r.lo, r.hi);
  }

  using Image = std::function<std::pair<Q, Q>(const Q&, const Q&, const Q&, const Q&)>;

  /// Pick the root of p equal to op(a, b) by shrinking interval images.
  static RealNum select(const Poly& p, RealNum a, RealNum b, const Image& image) {
    Poly sq = squarefree_part(p);
    auto roots = isolate_real_roots(sq);
    for (int iter = 0; iter < 100000; ++iter) {
      auto [tl, th] = image(a.lo(), a.hi(), b.lo(), b.hi());
      int found = -1, count = 0;
      for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& r = roots[i];
        bool hit = r.exact ? (tl <= r.value && r.value <= th) : (r.lo < th && tl < r.hi);
        if (hit) {
          found = static_cast<int>(i);
          ++count;
        }
      }
      if (count == 1) return from_interval(sq, roots[found]);
      a.refine();
      b.refine();
      for (auto& r : roots) refine_interval(sq, r);
    }
    throw std::logic_error("algebraic root selection did not converge");
  }

  bool rational_;
  Q q_;
  Poly p_;
  Q lo_, hi_;
};

inline int sign(const RealNum& r) { return r.sign(); }
inline bool is_zero(const RealNum& r) { return r.sign() == 0; }

}  // namespace lieclass
