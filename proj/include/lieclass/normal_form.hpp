#pragma once

#include "algebraic.hpp"
#include "invariants.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace lieclass {

/// Real eigenvalue (im == 0) or complex pair re +- i im with im > 0.
struct Eigenvalue {
  RealNum re, im;
  /// cached re^2 + im^2 and im^2; products of irrationals are expensive
  std::optional<RealNum> mod2_hint, im2_hint;
  bool is_complex() const { return im.sign() != 0; }
  RealNum modulus2() const { return mod2_hint ? *mod2_hint : re * re + im * im; }
  RealNum im2() const { return im2_hint ? *im2_hint : im * im; }
  friend bool operator==(const Eigenvalue& a, const Eigenvalue& b) { return a.re == b.re && a.im == b.im; }
};

struct JordanBlock {
  Eigenvalue eig;
  std::size_t size = 1;  // complex pairs: size of the complex block
  friend bool operator==(const JordanBlock& a, const JordanBlock& b) { return a.size == b.size && a.eig == b.eig; }
};

/// Canonical order: real part, then imaginary part, then size, all descending.
inline int compare_blocks(const JordanBlock& a, const JordanBlock& b) {
  if (int c = compare(a.eig.re, b.eig.re)) return c;
  if (int c = compare(a.eig.im, b.eig.im)) return c;
  return a.size < b.size ? -1 : a.size > b.size ? 1 : 0;
}

inline void sort_blocks(std::vector<JordanBlock>& bs) {
  std::stable_sort(bs.begin(), bs.end(), [](const JordanBlock& a, const JordanBlock& b) { return compare_blocks(a, b) > 0; });
}

inline int compare_block_lists(const std::vector<JordanBlock>& a, const std::vector<JordanBlock>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (int c = compare_blocks(a[i], b[i])) return c;
  return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
}

namespace detail {

/// Real root r of the irreducible h, with r^2 reduced to its minimal polynomial.
inline Eigenvalue real_root(const RealNum& r, const Poly& h) {
  QMatrix c = companion(h);
  return {r, RealNum(0), (r * r).reduced(charpoly(c * c)), RealNum(0)};
}

/// Eigenvalues of an irreducible factor h with no rational root (deg 2 or 3).
inline std::vector<Eigenvalue> irreducible_roots(const Poly& h) {
  std::vector<Eigenvalue> out;
  if (h.deg() == 2) {
    Q a = h[2], b = h[1], c = h[0];
    Q disc = b * b - 4 * a * c;
    if (sgn(disc) > 0) {
      RealNum s = RealNum(disc).sqrt();
      for (const RealNum& r : {(RealNum(Q(-b)) + s) / RealNum(Q(2 * a)), (RealNum(Q(-b)) - s) / RealNum(Q(2 * a))})
        out.push_back(real_root(r, h));
    } else {
      RealNum im = RealNum(Q(-disc)).sqrt() / RealNum(Q(2 * abs_q(a)));
      out.push_back({RealNum(Q(-b / (2 * a))), im, RealNum(Q(c / a)), RealNum(Q(-disc / (4 * a * a)))});
    }
    return out;
  }
  if (h.deg() == 3) {
    Poly s = h.primitive();
    auto roots = isolate_real_roots(s);
    if (roots.size() == 3) {
      for (const auto& r : roots) out.push_back(real_root(RealNum::root_of(s, r.lo, r.hi), s));
      return out;
    }
    // one real root rho; the pair has re = (sum - rho)/2 and |z|^2 = prod / rho
    RealNum rho = RealNum::root_of(s, roots.at(0).lo, roots.at(0).hi);
    Q a3 = h[3];
    RealNum re = (RealNum(Q(-h[2] / a3)) - rho) / RealNum(2);
    RealNum mod2 = RealNum(Q(-h[0] / a3)) / rho;
    // im^2 lies in Q(rho): its minimal polynomial comes from the companion matrix
    QMatrix c = companion(s), id = QMatrix::identity(3);
    QMatrix k = Q(-h[2] / a3) * id - c;
    QMatrix re2m = Q(1, 4) * (k * k);
    RealNum re2 = (re * re).reduced(charpoly(re2m));
    RealNum im2 = (mod2 - re2).reduced(charpoly(Q(-h[0] / a3) * *inverse(c) - re2m));
    RealNum im = im2.sqrt();
    out.push_back(real_root(rho, s));
    out.push_back({re, im, mod2, im2});
    return out;
  }
  throw Unsupported("eigenvalues of an irreducible factor of degree " + std::to_string(h.deg()) +
                    " are not supported");
}

/// Sizes of the Jordan blocks belonging to one root of the irreducible h.
inline std::vector<std::size_t> block_sizes(const QMatrix& m, const Poly& h, std::size_t mult) {
  std::size_t n = m.rows(), d = static_cast<std::size_t>(h.deg());
  QMatrix hm = eval_matrix(h, m), pw = QMatrix::identity(n);
  std::vector<std::size_t> ge;  // ge[k-1] = blocks of size >= k
  std::size_t prev = 0;
  for (std::size_t k = 1; k <= mult; ++k) {
    pw = pw * hm;
    std::size_t null = n - rank(pw);
    ge.push_back((null - prev) / d);
    prev = null;
    if (null == d * mult) break;
  }
  std::vector<std::size_t> sizes;
  for (std::size_t k = 0; k < ge.size(); ++k) {
    std::size_t exact = ge[k] - (k + 1 < ge.size() ? ge[k + 1] : 0);
    for (std::size_t c = 0; c < exact; ++c) sizes.push_back(k + 1);
  }
  return sizes;
}

}  // namespace detail

/// Real Jordan form of a rational matrix. Irrational eigenvalues are supported
/// when their minimal polynomial has degree at most 3.
inline std::vector<JordanBlock> real_jordan_form(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("real_jordan_form needs a square matrix");
  std::vector<JordanBlock> out;
  if (m.rows() == 0) return out;
  auto parts = squarefree_decomposition(charpoly(m));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::size_t mult = i + 1;
    Poly rest = parts[i];
    if (rest.deg() <= 0) continue;
    for (const Q& r : rational_roots(rest)) {
      Poly h = Poly::linear_root(r);
      rest = rest / h;
      for (auto s : detail::block_sizes(m, h, mult)) out.push_back({{RealNum(r), RealNum(0)}, s});
    }
    if (rest.deg() <= 0) continue;
    if (rest.deg() > 3)
      throw Unsupported("characteristic polynomial has an irrational factor of degree " + std::to_string(rest.deg()));
    auto sizes = detail::block_sizes(m, rest, mult);
    for (const auto& e : detail::irreducible_roots(rest))
      for (auto s : sizes) out.push_back({e, s});
  }
  sort_blocks(out);
  return out;
}

/// Rational realification, when every eigenvalue datum is rational.
inline std::optional<QMatrix> realify(const std::vector<JordanBlock>& bs) {
  std::size_t n = 0;
  for (const auto& b : bs) {
    if (!b.eig.re.is_rational() || !b.eig.im.is_rational()) return std::nullopt;
    n += b.eig.is_complex() ? 2 * b.size : b.size;
  }
  QMatrix m(n, n);
  std::size_t o = 0;
  for (const auto& b : bs) {
    Q re = b.eig.re.rational(), im = b.eig.im.rational();
    if (!b.eig.is_complex()) {
      for (std::size_t i = 0; i < b.size; ++i) {
        m(o + i, o + i) = re;
        if (i + 1 < b.size) m(o + i, o + i + 1) = 1;
      }
      o += b.size;
    } else {
      for (std::size_t i = 0; i < b.size; ++i) {
        std::size_t p = o + 2 * i;
        m(p, p) = re;
        m(p + 1, p + 1) = re;
        m(p, p + 1) = -im;
        m(p + 1, p) = im;
        if (i + 1 < b.size) {
          m(p, p + 2) = 1;
          m(p + 1, p + 3) = 1;
        }
      }
      o += 2 * b.size;
    }
  }
  return m;
}

// ------------------------------------------------------------------ NJNF

struct NJNF {
  std::vector<JordanBlock> blocks;
  RealNum divisor{1};  // diagnostics only
  friend bool operator==(const NJNF& a, const NJNF& b) { return a.blocks == b.blocks; }
};

namespace detail {
/// c2 = c^2, passed in to keep the cached squares small.
inline std::vector<JordanBlock> divided(const std::vector<JordanBlock>& bs, const RealNum& c, const RealNum& c2) {
  std::vector<JordanBlock> out;
  RealNum ac = c.abs();
  auto quot = [](const RealNum& x, const RealNum& y) {
    if (x.sign() == 0) return RealNum(0);
    if (x == y) return RealNum(1);
    if (x == -y) return RealNum(-1);
    return x / y;
  };
  for (const auto& b : bs) {
    JordanBlock nb = b;
    nb.eig.re = quot(b.eig.re, c);
    nb.eig.im = quot(b.eig.im, ac);
    nb.eig.mod2_hint = quot(b.eig.modulus2(), c2);
    nb.eig.im2_hint = quot(b.eig.im2(), c2);
    out.push_back(nb);
  }
  sort_blocks(out);
  return out;
}
}  // namespace detail

/// Homothetic normal form: divide by the leading modulus (the imaginary part
/// when a complex pair leads), then pick the sign giving the larger list.
inline NJNF normalize(const std::vector<JordanBlock>& blocks) {
  NJNF out;
  RealNum best(0);
  bool complex_lead = false;
  for (const auto& b : blocks) {
    RealNum m = b.eig.modulus2();
    int c = compare(m, best);
    if (c > 0) {
      best = m;
      complex_lead = b.eig.is_complex();
    } else if (c == 0 && b.eig.is_complex()) {
      complex_lead = true;
    }
  }
  if (best.sign() == 0) {
    out.blocks = blocks;
    sort_blocks(out.blocks);
    return out;
  }
  RealNum c(0), c2(0);
  for (const auto& b : blocks) {
    if (b.eig.modulus2() != best) continue;
    RealNum v = complex_lead ? b.eig.im : b.eig.re.abs();
    if (complex_lead && !b.eig.is_complex()) continue;
    if (v > c) {
      c = v;
      c2 = complex_lead ? b.eig.im2() : best;
    }
  }
  auto plus = detail::divided(blocks, c, c2), minus = detail::divided(blocks, -c, c2);
  if (compare_block_lists(minus, plus) > 0) {
    out.blocks = std::move(minus);
    out.divisor = -c;
  } else {
    out.blocks = std::move(plus);
    out.divisor = c;
  }
  return out;
}

enum class Chirality { selfdual, R, L };

inline const char* chirality_name(Chirality c) {
  switch (c) {
    case Chirality::R: return "R";
    case Chirality::L: return "L";
    default: return "selfdual";
  }
}

struct ONJNF {
  NJNF njnf;
  Chirality sign = Chirality::selfdual;
};

// -------------------------------------------------------- restricted adjoint

/// Matrix of ad(w) on the ideal, in the ideal's basis.
inline QMatrix restricted_adjoint(const StructureConstants& sc, const Subspace& ideal, const Vec& w) {
  if (ideal.contains(w)) throw std::invalid_argument("complement vector lies inside the ideal");
  if (!is_ideal(sc, ideal)) throw std::invalid_argument("subspace is not an ideal");
  return detail::restricted_ad(sc, ideal.basis(), w);
}

inline NJNF njnf_of(const StructureConstants& sc, const Subspace& ideal, const Vec& w) {
  return normalize(real_jordan_form(restricted_adjoint(sc, ideal, w)));
}

/// First codim-1 ideal of the requested type with a coordinate complement vector.
inline std::optional<std::pair<Subspace, Vec>> ideal_in_position(const StructureConstants& sc, IdealType t) {
  for (const auto& h : codim1_ideals(sc).ideals)
    if (h.type == t) return std::make_pair(h.space, h.space.complement().at(0));
  return std::nullopt;
}

struct NotComparable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Equivalence inside one ideal stratum by comparing NJNFs.
inline bool njnf_equivalent(const StructureConstants& a, const StructureConstants& b, IdealType t) {
  if (a.dim() != b.dim()) return false;
  auto ia = ideal_in_position(a, t), ib = ideal_in_position(b, t);
  if (!ia || !ib) throw NotComparable("not comparable by this test: missing codim-1 ideal of type " +
                                      std::string(ideal_type_name(t)));
  return njnf_of(a, ia->first, ia->second) == njnf_of(b, ib->first, ib->second);
}

}  // namespace lieclass
