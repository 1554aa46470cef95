#pragma once

#include "matrix.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lieclass {

/// Univariate polynomial over Q, coefficients stored low degree first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Q> c) : c_(std::move(c)) { trim(); }
  static Poly constant(const Q& a) { return Poly(std::vector<Q>{a}); }
  static Poly x() { return Poly(std::vector<Q>{Q(0), Q(1)}); }
  static Poly linear_root(const Q& r) { return Poly(std::vector<Q>{Q(-r), Q(1)}); }

  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool zero() const { return c_.empty(); }
  const std::vector<Q>& coeffs() const { return c_; }
  Q operator[](int i) const { return i >= 0 && i <= deg() ? c_[i] : Q(0); }
  Q lead() const { return c_.empty() ? Q(0) : c_.back(); }

  Q eval(const Q& x) const {
    Q r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }
  int sign_at(const Q& x) const { return sgn(eval(x)); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Q> c(std::max(a.c_.size(), b.c_.size()), Q(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.zero() || b.zero()) return Poly();
    std::vector<Q> c(a.c_.size() + b.c_.size() - 1, Q(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const Q& s, const Poly& a) {
    Poly r = a;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }

  /// Quotient and remainder; b must be nonzero.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.zero()) throw std::domain_error("polynomial division by zero");
    if (a.deg() < b.deg()) return {Poly(), a};
    std::vector<Q> r = a.c_, q(a.c_.size() - b.c_.size() + 1, Q(0));
    Q lb = b.lead();
    for (int i = a.deg() - b.deg(); i >= 0; --i) {
      Q f = r[i + b.deg()] / lb;
      q[i] = f;
      if (sgn(f) == 0) continue;
      for (int j = 0; j <= b.deg(); ++j) r[i + j] -= f * b.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  Poly monic() const {
    if (zero()) return *this;
    return Q(1 / lead()) * *this;
  }

  /// Integer coefficients with unit content and positive leading coefficient.
  Poly primitive() const {
    if (zero()) return *this;
    mpz_class l = 1, g = 0;
    for (const auto& x : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Q> c;
    for (const auto& x : c_) {
      Q y = x * Q(l);
      c.push_back(y);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_num_mpz_t());
    }
    if (sgn(c.back()) < 0) g = -g;
    for (auto& y : c) y /= Q(g);
    return Poly(std::move(c));
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Q> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Q(static_cast<long>(i));
    return Poly(std::move(d));
  }

  /// p(-x)
  Poly negate_var() const {
    Poly r = *this;
    for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
  }
  /// p(x^2)
  Poly square_var() const {
    if (zero()) return *this;
    std::vector<Q> c(2 * c_.size() - 1, Q(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[2 * i] = c_[i];
    return Poly(std::move(c));
  }
  /// x^deg p(1/x)
  Poly reversed() const {
    std::vector<Q> c(c_.rbegin(), c_.rend());
    return Poly(std::move(c));
  }
  /// p(s x)
  Poly scale_var(const Q& s) const {
    Poly r = *this;
    Q p = 1;
    for (auto& x : r.c_) {
      x *= p;
      p *= s;
    }
    r.trim();
    return r;
  }

  std::string str() const {
    if (zero()) return "0";
    std::string s;
    for (int i = deg(); i >= 0; --i) {
      if (sgn(c_[i]) == 0) continue;
      if (!s.empty()) s += sgn(c_[i]) > 0 ? " + " : " - ";
      else if (sgn(c_[i]) < 0) s += "-";
      Q a = abs_q(c_[i]);
      if (a != 1 || i == 0) s += a.get_str();
      if (i >= 1) s += (a != 1 ? "*x" : "x");
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Q> c_;
};

inline Poly gcd(Poly a, Poly b) {
  while (!b.zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Poly squarefree_part(const Poly& p) {
  if (p.deg() <= 0) return p.monic();
  return (p / gcd(p, p.derivative())).monic();
}

/// Yun: p = lead * prod f[i]^(i+1) with f[i] squarefree, pairwise coprime, monic.
inline std::vector<Poly> squarefree_decomposition(const Poly& p) {
  std::vector<Poly> out;
  if (p.deg() <= 0) return out;
  Poly a = p.monic();
  Poly b = a.derivative();
  Poly c = gcd(a, b);
  Poly w = a / c;
  Poly y = b / c;
  Poly z = y - w.derivative();
  while (w.deg() > 0) {
    Poly g = gcd(w, z);
    out.push_back(g);
    w = w / g;
    y = z / g;
    z = y - w.derivative();
  }
  while (!out.empty() && out.back().deg() == 0) out.pop_back();
  return out;
}

/// Characteristic polynomial det(x I - m), Faddeev-LeVerrier.
inline Poly charpoly(const QMatrix& m) {
  std::size_t n = m.rows();
  std::vector<Q> c(n + 1, Q(0));
  c[n] = 1;
  QMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix t = m * mk;
    for (std::size_t i = 0; i < n; ++i) t(i, i) += c[n - k + 1];
    mk = t;
    c[n - k] = -(m * mk).trace() / Q(static_cast<long>(k));
  }
  return Poly(std::move(c));
}

inline QMatrix companion(const Poly& p) {
  Poly q = p.monic();
  std::size_t d = static_cast<std::size_t>(q.deg());
  QMatrix c(d, d);
  for (std::size_t i = 1; i < d; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < d; ++i) c(i, d - 1) = -q[static_cast<int>(i)];
  return c;
}

inline QMatrix eval_matrix(const Poly& p, const QMatrix& m) {
  QMatrix r(m.rows(), m.cols());
  for (int i = p.deg(); i >= 0; --i) {
    r = r * m;
    for (std::size_t j = 0; j < m.rows(); ++j) r(j, j) += p[i];
  }
  return r;
}

// ---------------------------------------------------------------- real roots

inline std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> s{p, p.derivative()};
  while (!s.back().zero()) {
    Poly r = -(s[s.size() - 2] % s.back());
    if (r.zero()) break;
    s.push_back(r);
  }
  return s;
}

inline int sign_variations(const std::vector<Poly>& seq, const Q& x) {
  int v = 0, last = 0;
  for (const auto& p : seq) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

/// Number of distinct real roots in (a, b].
inline int count_roots(const std::vector<Poly>& seq, const Q& a, const Q& b) {
  return sign_variations(seq, a) - sign_variations(seq, b);
}

inline Q root_bound(const Poly& p) {
  Q m = 0;
  for (int i = 0; i < p.deg(); ++i) m = std::max(m, abs_q(p[i] / p.lead()));
  return m + 1;
}

/// Rational of smallest denominator strictly inside (a, b), a < b.
inline Q simplest_between(const Q& a, const Q& b) {
  Q fa = floor_q(a);
  Q lo_int = fa + 1, hi_int = -floor_q(-b) - 1;
  if (lo_int <= hi_int) {
    if (sgn(lo_int) <= 0 && sgn(hi_int) >= 0) return Q(0);
    return sgn(lo_int) > 0 ? lo_int : hi_int;
  }
  // no integer strictly inside: a in [fa, fa+1), b <= fa+1
  Q lo = a - fa, hi = b - fa;  // 0 <= lo < hi <= 1
  if (sgn(lo) == 0) {
    Q k = floor_q(1 / hi) + 1;
    return fa + 1 / k;
  }
  return fa + 1 / simplest_between(1 / hi, 1 / lo);
}

struct RootInterval {
  Q lo, hi;       // open isolating interval, endpoints are not roots
  bool exact = false;
  Q value;        // the root when exact
};

namespace detail {
inline Q split_point(const Poly& p, const Q& lo, const Q& hi) {
  Q m = (lo + hi) / 2;
  for (long k = 3; p.sign_at(m) == 0; ++k) m = lo + (hi - lo) / Q(k);
  return m;
}
}  // namespace detail

/// Isolate the real roots of a squarefree polynomial, ascending; exact rational
/// roots hit during bisection are flagged.
inline std::vector<RootInterval> isolate_real_roots(const Poly& p) {
  std::vector<RootInterval> out;
  if (p.deg() <= 0) return out;
  auto seq = sturm_sequence(p);
  Q b = root_bound(p);
  std::vector<std::pair<Q, Q>> stack{{-b, b}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int k = count_roots(seq, lo, hi);
    if (k == 0) continue;
    if (k == 1) {
      RootInterval r{lo, hi, false, Q(0)};
      Q s = simplest_between(lo, hi);
      if (p.sign_at(s) == 0) {
        r.exact = true;
        r.value = s;
      }
      out.push_back(r);
      continue;
    }
    Q m = (lo + hi) / 2;
    if (p.sign_at(m) == 0) {
      out.push_back({m, m, true, m});
      Q e = (hi - lo) / 4;
      while (count_roots(seq, m - e, m + e) != 1 || p.sign_at(m - e) == 0 || p.sign_at(m + e) == 0) e /= 2;
      out.back().lo = m - e;
      out.back().hi = m + e;
      stack.push_back({lo, m - e});
      stack.push_back({m + e, hi});
      continue;
    }
    stack.push_back({lo, m});
    stack.push_back({m, hi});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

/// Shrink an isolating interval of a squarefree p by one bisection.
/// Returns true when the root turned out to be the exact midpoint.
inline bool bisect_root(const Poly& p, Q& lo, Q& hi, Q& exact) {
  Q m = (lo + hi) / 2;
  int sm = p.sign_at(m);
  if (sm == 0) {
    exact = m;
    return true;
  }
  if (sm == p.sign_at(lo)) lo = m;
  else hi = m;
  return false;
}

/// Decide whether the root of squarefree p isolated in (lo, hi) is rational.
inline std::optional<Q> rational_root_in(const Poly& p, Q lo, Q hi) {
  Poly z = p.primitive();
  Q lc = z.lead();
  Q width = 1 / (lc * lc);
  for (;;) {
    Q s = simplest_between(lo, hi);
    if (p.sign_at(s) == 0) return s;
    if (hi - lo < width) return std::nullopt;
    Q ex;
    if (bisect_root(p, lo, hi, ex)) return ex;
  }
}

/// Distinct rational roots of p, ascending.
inline std::vector<Q> rational_roots(const Poly& p) {
  std::vector<Q> out;
  if (p.deg() <= 0) return out;
  Poly s = squarefree_part(p);
  for (const auto& r : isolate_real_roots(s)) {
    if (r.exact) out.push_back(r.value);
    else if (auto q = rational_root_in(s, r.lo, r.hi)) out.push_back(*q);
  }
  return out;
}

}  // namespace lieclass
