#pragma once

#include "structure_constants.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

namespace lieclass {

// ------------------------------------------------------------------ subspaces

/// Subspace of Q^n held as a reduced row echelon basis (canonical).
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t n) : n_(n) {}

  static Subspace span(std::size_t n, const std::vector<Vec>& vs) {
    Subspace s(n);
    if (vs.empty()) return s;
    QMatrix m(vs.size(), n);
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = vs[i][j];
    auto e = rref(m);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      Vec v(n);
      for (std::size_t j = 0; j < n; ++j) v[j] = e.m(r, j);
      s.basis_.push_back(std::move(v));
    }
    return s;
  }
  static Subspace whole(std::size_t n) {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(unit(n, i));
    return span(n, vs);
  }
  static Vec unit(std::size_t n, std::size_t i) {
    Vec v(n, Q(0));
    v[i] = 1;
    return v;
  }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }

  bool contains(const Vec& v) const {
    std::vector<Vec> vs = basis_;
    vs.push_back(v);
    return span(n_, vs).dim() == dim();
  }
  bool contains(const Subspace& o) const {
    for (const auto& v : o.basis_)
      if (!contains(v)) return false;
    return true;
  }
  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

  /// Coordinate unit vectors extending this basis to the whole space.
  std::vector<Vec> complement() const {
    std::vector<Vec> cur = basis_, out;
    std::size_t d = dim();
    for (std::size_t i = 0; i < n_ && d < n_; ++i) {
      cur.push_back(unit(n_, i));
      if (span(n_, cur).dim() > d) {
        out.push_back(unit(n_, i));
        ++d;
      } else {
        cur.pop_back();
      }
    }
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Vec> basis_;
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
  std::vector<Vec> vs = a.basis();
  vs.insert(vs.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient(), vs);
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  std::size_t n = a.ambient();
  if (a.dim() == 0 || b.dim() == 0) return Subspace(n);
  // x = sum p_i a_i = sum q_j b_j
  QMatrix m(n, a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t r = 0; r < n; ++r) m(r, i) = a.basis()[i][r];
  for (std::size_t j = 0; j < b.dim(); ++j)
    for (std::size_t r = 0; r < n; ++r) m(r, a.dim() + j) = -b.basis()[j][r];
  std::vector<Vec> vs;
  for (const auto& k : nullspace(m)) {
    Vec v(n, Q(0));
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t r = 0; r < n; ++r) v[r] += k[i] * a.basis()[i][r];
    vs.push_back(v);
  }
  return Subspace::span(n, vs);
}

/// span{[x, y] : x in a, y in b}
inline Subspace bracket(const StructureConstants& sc, const Subspace& a, const Subspace& b) {
  std::vector<Vec> vs;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) vs.push_back(sc.bracket(x, y));
  return Subspace::span(sc.dim(), vs);
}

inline bool is_subalgebra(const StructureConstants& sc, const Subspace& s) { return s.contains(bracket(sc, s, s)); }
inline bool is_ideal(const StructureConstants& sc, const Subspace& s) {
  return s.contains(bracket(sc, Subspace::whole(sc.dim()), s));
}
inline bool is_abelian(const StructureConstants& sc, const Subspace& s) { return bracket(sc, s, s).dim() == 0; }

inline Subspace derived_algebra(const StructureConstants& sc) {
  Subspace a = Subspace::whole(sc.dim());
  return bracket(sc, a, a);
}

/// {x : [x, s] = 0 for all s in S}
inline Subspace centralizer(const StructureConstants& sc, const Subspace& s) {
  std::size_t n = sc.dim();
  QMatrix m(n * s.dim(), n);
  for (std::size_t b = 0; b < s.dim(); ++b)
    for (std::size_t a = 0; a < n; ++a) {
      Vec v = sc.bracket(Subspace::unit(n, a), s.basis()[b]);
      for (std::size_t k = 0; k < n; ++k) m(b * n + k, a) = v[k];
    }
  return Subspace::span(n, nullspace(m));
}

inline Subspace center(const StructureConstants& sc) { return centralizer(sc, Subspace::whole(sc.dim())); }

/// Structure constants of a subalgebra in the given (independent, closed) basis.
inline StructureConstants restrict_to(const StructureConstants& sc, const std::vector<Vec>& basis) {
  std::size_t n = sc.dim(), m = basis.size();
  QMatrix b = QMatrix::from_columns(basis, n);
  StructureConstants out(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      auto x = solve(b, sc.bracket(basis[i], basis[j]));
      if (!x) throw std::invalid_argument("basis does not span a subalgebra");
      for (std::size_t k = 0; k < m; ++k) out.set(i, j, k, (*x)[k]);
    }
  return out;
}

/// Coordinates of v in an independent basis (v must lie in the span).
inline Vec coordinates(const std::vector<Vec>& basis, const Vec& v) {
  auto x = solve(QMatrix::from_columns(basis, v.size()), v);
  if (!x) throw std::invalid_argument("vector outside the span");
  return *x;
}

// --------------------------------------------------------------------- series

struct SeriesProfile {
  std::vector<std::size_t> central_dims, derived_dims;
  bool nilpotent = false, solvable = false;
  std::optional<std::size_t> nilpotency_degree, solvability_degree;
  bool operator==(const SeriesProfile&) const = default;
};

inline SeriesProfile series_profile(const StructureConstants& sc) {
  SeriesProfile p;
  Subspace a = Subspace::whole(sc.dim());
  Subspace c = a;
  p.central_dims.push_back(c.dim());
  while (c.dim() > 0) {
    Subspace nx = bracket(sc, a, c);
    p.central_dims.push_back(nx.dim());
    if (nx.dim() == c.dim()) break;
    c = nx;
  }
  Subspace d = a;
  p.derived_dims.push_back(d.dim());
  while (d.dim() > 0) {
    Subspace nx = bracket(sc, d, d);
    p.derived_dims.push_back(nx.dim());
    if (nx.dim() == d.dim()) break;
    d = nx;
  }
  p.nilpotent = p.central_dims.back() == 0;
  p.solvable = p.derived_dims.back() == 0;
  if (p.nilpotent) p.nilpotency_degree = p.central_dims.size() - 1;
  if (p.solvable) p.solvability_degree = p.derived_dims.size() - 1;
  return p;
}

inline bool is_unimodular(const StructureConstants& sc) {
  for (std::size_t i = 0; i < sc.dim(); ++i)
    if (sgn(adjoint_matrix(sc, i).trace()) != 0) return false;
  return true;
}

// -------------------------------------------------------------- killing form

inline QMatrix killing_form(const StructureConstants& sc) {
  std::size_t n = sc.dim();
  std::vector<QMatrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(adjoint_matrix(sc, i));
  QMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      k(i, j) = (ads[i] * ads[j]).trace();
      k(j, i) = k(i, j);
    }
  return k;
}

struct Inertia {
  int pos = 0, neg = 0, zero = 0;
  bool operator==(const Inertia&) const = default;
};

/// Sylvester inertia of a symmetric rational matrix by congruence.
inline Inertia inertia(QMatrix m) {
  std::size_t n = m.rows();
  Inertia in;
  std::size_t k = 0;
  auto swap_rc = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(m(a, j), m(b, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(m(i, a), m(i, b));
  };
  for (; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(m(p, p)) == 0) ++p;
    if (p == n) {
      bool found = false;
      for (std::size_t i = k; i < n && !found; ++i)
        for (std::size_t j = i + 1; j < n && !found; ++j)
          if (sgn(m(i, j)) != 0) {
            for (std::size_t c = 0; c < n; ++c) m(i, c) += m(j, c);
            for (std::size_t r = 0; r < n; ++r) m(r, i) += m(r, j);
            p = i;
            found = true;
          }
      if (!found) break;
    }
    swap_rc(k, p);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (sgn(m(r, k)) == 0) continue;
      Q f = m(r, k) / m(k, k);
      for (std::size_t c = 0; c < n; ++c) m(r, c) -= f * m(k, c);
      for (std::size_t c = 0; c < n; ++c) m(c, r) -= f * m(c, k);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    int s = sgn(m(i, i));
    if (s > 0) ++in.pos;
    else if (s < 0) ++in.neg;
    else ++in.zero;
  }
  return in;
}

/// Killing-orthogonal complement of the derived algebra.
inline Subspace radical(const StructureConstants& sc) {
  std::size_t n = sc.dim();
  Subspace d = derived_algebra(sc);
  if (d.dim() == 0) return Subspace::whole(n);
  QMatrix k = killing_form(sc);
  QMatrix m(d.dim(), n);
  for (std::size_t r = 0; r < d.dim(); ++r)
    for (std::size_t j = 0; j < n; ++j) {
      Q s = 0;
      for (std::size_t i = 0; i < n; ++i) s += d.basis()[r][i] * k(i, j);
      m(r, j) = s;
    }
  return Subspace::span(n, nullspace(m));
}

// ----------------------------------------------------------------- behr form

struct BehrForm {
  QMatrix n;  // symmetric n^{lk}
  Vec a;
};

namespace detail {
inline int levi_civita(std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) return 0;
  int inv = (i > j) + (i > k) + (j > k);
  return inv % 2 == 0 ? 1 : -1;
}
}  // namespace detail

/// C^k_ij = eps_ijl n^{lk} + delta^k_i a_j - delta^k_j a_i.
inline BehrForm behr_form(const StructureConstants& sc) {
  if (sc.dim() != 3) throw std::invalid_argument("Behr form is defined for dim 3 only");
  BehrForm b{QMatrix(3, 3), Vec(3, Q(0))};
  for (std::size_t i = 0; i < 3; ++i) {
    Q tr = 0;
    for (std::size_t k = 0; k < 3; ++k) tr += sc.at(i, k, k);
    b.a[i] = -tr / 2;
  }
  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t k = 0; k < 3; ++k) {
      Q s = 0;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          int e = detail::levi_civita(i, j, l);
          if (e == 0) continue;
          Q c = sc.at(i, j, k);
          if (k == i) c -= b.a[j];
          if (k == j) c += b.a[i];
          s += e * c;
        }
      b.n(l, k) = s / 2;
    }
  return b;
}

/// Rebuild C from a Behr pair.
inline StructureConstants behr_recombine(const BehrForm& b) {
  StructureConstants c(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        Q s = 0;
        for (std::size_t l = 0; l < 3; ++l) s += detail::levi_civita(i, j, l) * b.n(l, k);
        if (k == i) s += b.a[j];
        if (k == j) s -= b.a[i];
        c.at(i, j, k) = s;
      }
  return c;
}

// ----------------------------------------------------------- codim-1 ideals

enum class IdealType { abelian, heisenberg, vtype, other };

inline const char* ideal_type_name(IdealType t) {
  switch (t) {
    case IdealType::abelian: return "I";
    case IdealType::heisenberg: return "II";
    case IdealType::vtype: return "V";
    default: return "other";
  }
}

struct HyperplaneIdeal {
  Subspace space;
  IdealType type;
};

struct Codim1Ideals {
  std::vector<HyperplaneIdeal> ideals;
  bool non_unique = false;          // infinitely many exist; representatives only
  bool irrational_skipped = false;  // a nilpotent ideal needs an irrational direction
};

namespace detail {

/// ad_w restricted to an invariant subspace, in that subspace's basis.
inline QMatrix restricted_ad(const StructureConstants& sc, const std::vector<Vec>& basis, const Vec& w) {
  std::size_t m = basis.size();
  QMatrix out(m, m);
  QMatrix b = QMatrix::from_columns(basis, sc.dim());
  for (std::size_t j = 0; j < m; ++j) {
    auto x = solve(b, sc.bracket(w, basis[j]));
    if (!x) throw std::invalid_argument("subspace not invariant under ad");
    for (std::size_t i = 0; i < m; ++i) out(i, j) = (*x)[i];
  }
  return out;
}

inline IdealType hyperplane_type(const StructureConstants& sc, const Subspace& h) {
  if (is_abelian(sc, h)) return IdealType::abelian;
  StructureConstants r = restrict_to(sc, h.basis());
  if (series_profile(r).nilpotent && r.dim() == 3) return IdealType::heisenberg;
  if (r.dim() == 3) {
    Subspace d = derived_algebra(r);
    if (d.dim() == 2 && is_abelian(r, d)) {
      // V: some element acts on the derived algebra as a nonzero scalar
      for (const auto& u : d.complement()) {
        QMatrix m = restricted_ad(r, d.basis(), u);
        if (sgn(m(0, 1)) == 0 && sgn(m(1, 0)) == 0 && m(0, 0) == m(1, 1) && sgn(m(0, 0)) != 0)
          return IdealType::vtype;
      }
    }
  }
  return IdealType::other;
}

}  // namespace detail

inline Codim1Ideals codim1_ideals(const StructureConstants& sc) {
  std::size_t n = sc.dim();
  Codim1Ideals out;
  if (n < 2) return out;
  Subspace d = derived_algebra(sc);
  if (d.dim() == n) return out;
  auto add = [&](const Subspace& h) {
    for (const auto& x : out.ideals)
      if (x.space == h) return;
    out.ideals.push_back({h, detail::hyperplane_type(sc, h)});
  };
  if (d.dim() == n - 1) {
    add(d);
    return out;
  }
  out.non_unique = true;
  std::vector<Vec> u = d.complement();
  if (u.size() == 2) {
    auto hyper = [&](const Q& al, const Q& be) {
      Vec w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = al * u[0][i] + be * u[1][i];
      std::vector<Vec> vs = d.basis();
      vs.push_back(w);
      return Subspace::span(n, vs);
    };
    bool d_abelian = is_abelian(sc, d);
    // Abelian: [D, w] = 0 is linear in (alpha, beta)
    if (d_abelian) {
      QMatrix m(n * std::max<std::size_t>(d.dim(), 1), 2);
      for (std::size_t b = 0; b < d.dim(); ++b)
        for (std::size_t c = 0; c < 2; ++c) {
          Vec v = sc.bracket(d.basis()[b], u[c]);
          for (std::size_t k = 0; k < n; ++k) m(b * n + k, c) = v[k];
        }
      auto ker = nullspace(m);
      if (!ker.empty()) add(hyper(ker[0][0], ker[0][1]));
    }
    if (d_abelian && d.dim() == 2) {
      QMatrix m1 = detail::restricted_ad(sc, d.basis(), u[0]);
      QMatrix m2 = detail::restricted_ad(sc, d.basis(), u[1]);
      auto det2 = [](const QMatrix& a) { return Q(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)); };
      // nilpotent: trace and determinant of al*m1 + be*m2 vanish
      Q t1 = m1.trace(), t2 = m2.trace();
      std::vector<std::pair<Q, Q>> dirs;
      if (sgn(t1) != 0 || sgn(t2) != 0) {
        dirs.push_back({t2, -t1});
      } else {
        // det(al m1 + be m2) = A al^2 + B al be + C be^2
        Q A = det2(m1), C = det2(m2), B = det2(m1 + m2) - A - C;
        if (sgn(A) == 0) dirs.push_back({Q(1), Q(0)});
        if (sgn(A) != 0) {
          Q disc = B * B - 4 * A * C, r;
          if (sgn(disc) >= 0) {
            if (exact_root(disc, 2, r)) {
              dirs.push_back({Q((-B + r) / (2 * A)), Q(1)});
              dirs.push_back({Q((-B - r) / (2 * A)), Q(1)});
            } else {
              out.irrational_skipped = true;
            }
          }
        }
      }
      for (auto [al, be] : dirs) {
        QMatrix mm = al * m1 + be * m2;
        if (sgn(mm.trace()) == 0 && sgn(det2(mm)) == 0) add(hyper(al, be));
      }
      // V type: al*m1 + be*m2 = c*I with c != 0
      QMatrix lin(4, 3);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
          lin(2 * r + c, 0) = m1(r, c);
          lin(2 * r + c, 1) = m2(r, c);
          lin(2 * r + c, 2) = r == c ? Q(-1) : Q(0);
        }
      for (const auto& k : nullspace(lin))
        if (sgn(k[2]) != 0) {
          add(hyper(k[0], k[1]));
          break;
        }
    }
  }
  // abelian representative: grow D + Z by commuting vectors
  bool have_abelian = std::any_of(out.ideals.begin(), out.ideals.end(),
                                  [](const HyperplaneIdeal& x) { return x.type == IdealType::abelian; });
  Subspace s = sum(d, center(sc));
  if (!have_abelian && s.dim() < n && is_abelian(sc, s)) {
    for (std::size_t i = 0; i < n && s.dim() < n - 1; ++i) {
      Vec v = Subspace::unit(n, i);
      if (s.contains(v)) continue;
      bool commutes = true;
      for (const auto& b : s.basis())
        for (const Q& x : sc.bracket(v, b)) commutes = commutes && sgn(x) == 0;
      if (commutes) s = sum(s, Subspace::span(n, {v}));
    }
    if (s.dim() == n - 1) add(s);
  }
  // coordinate representative
  std::vector<Vec> vs = d.basis();
  std::vector<Vec> comp = d.complement();
  for (std::size_t i = 0; i + 1 < comp.size(); ++i) vs.push_back(comp[i]);
  add(Subspace::span(n, vs));
  return out;
}

// ------------------------------------------------------------------ 2A_2 test

struct TwoA2Split {
  bool is_2a2 = false;
  /// Two bases (d, x) with [x, d] = d, present when the split is rational.
  std::optional<std::array<std::vector<Vec>, 2>> bases;
};

/// Detects 2A_2 among 4-dim center-free algebras with 2-dim abelian derived
/// algebra: the ad-action on D is a 2-dim algebra of real-diagonalizable maps.
inline TwoA2Split split_2a2(const StructureConstants& sc) {
  TwoA2Split out;
  if (sc.dim() != 4 || center(sc).dim() != 0) return out;
  Subspace d = derived_algebra(sc);
  if (d.dim() != 2 || !is_abelian(sc, d)) return out;
  std::vector<Vec> u = d.complement();
  QMatrix m1 = detail::restricted_ad(sc, d.basis(), u[0]);
  QMatrix m2 = detail::restricted_ad(sc, d.basis(), u[1]);
  {
    QMatrix lin(4, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) {
        lin(2 * r + c, 0) = m1(r, c);
        lin(2 * r + c, 1) = m2(r, c);
      }
    if (rank(lin) != 2) return out;
  }
  auto disc = [](const QMatrix& m) {
    Q t = m.trace(), det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return Q(t * t - 4 * det);
  };
  // q(al, be) = A al^2 + B al be + C be^2
  Q A = disc(m1), C = disc(m2), B = disc(m1 + m2) - A - C;
  Q al, be;
  if (sgn(A) > 0) al = 1, be = 0;
  else if (sgn(C) > 0) al = 0, be = 1;
  else if (sgn(B * B - 4 * A * C) > 0) {
    if (sgn(A) < 0) al = -B / (2 * A), be = 1;
    else al = (1 - C) / B, be = 1;
  } else {
    return out;
  }
  out.is_2a2 = true;
  QMatrix m = al * m1 + be * m2;
  Q dq = disc(m), r;
  if (!exact_root(dq, 2, r)) return out;
  Q tr = m.trace();
  std::vector<Vec> eig;  // eigenvectors in D coordinates
  for (Q lam : {Q((tr + r) / 2), Q((tr - r) / 2)}) {
    QMatrix s = m - lam * QMatrix::identity(2);
    auto ker = nullspace(s);
    eig.push_back(ker.at(0));
  }
  auto ambient = [&](const Vec& c) {
    Vec v(4, Q(0));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 4; ++k) v[k] += c[i] * d.basis()[i][k];
    return v;
  };
  Vec d1 = ambient(eig[0]), d2 = ambient(eig[1]);
  std::vector<Vec> dd{d1, d2};
  // eigenvalues of ad u_c on d1, d2
  auto eigval = [&](const Vec& uu, const Vec& dv) { return coordinates(dd, sc.bracket(uu, dv)); };
  Vec a1 = eigval(u[0], d1), a2 = eigval(u[1], d1), b1 = eigval(u[0], d2), b2 = eigval(u[1], d2);
  QMatrix pq = QMatrix::from_rows({{a1[0], a2[0]}, {b1[1], b2[1]}});
  auto cx = solve(pq, Vec{Q(1), Q(0)});
  auto cy = solve(pq, Vec{Q(0), Q(1)});
  if (!cx || !cy) return out;
  Vec x0(4), y0(4);
  for (std::size_t k = 0; k < 4; ++k) {
    x0[k] = (*cx)[0] * u[0][k] + (*cx)[1] * u[1][k];
    y0[k] = (*cy)[0] * u[0][k] + (*cy)[1] * u[1][k];
  }
  Vec sr = coordinates(dd, sc.bracket(x0, y0));
  Vec x = x0, y = y0;
  for (std::size_t k = 0; k < 4; ++k) {
    x[k] += sr[1] * d2[k];
    y[k] -= sr[0] * d1[k];
  }
  out.bases = std::array<std::vector<Vec>, 2>{std::vector<Vec>{d1, x}, std::vector<Vec>{d2, y}};
  return out;
}

// ------------------------------------------------------- direct-sum splitting

struct DirectSum {
  std::vector<std::vector<Vec>> factor_bases;   // bases in ambient coordinates
  std::vector<StructureConstants> factors;
  std::size_t essential_dimension = 0;
};

/// Splits off central A_1 factors complementary to the derived algebra, then
/// a rational 2A_2 split of what remains.
inline DirectSum decompose_direct_sum(const StructureConstants& sc) {
  std::size_t n = sc.dim();
  DirectSum out;
  Subspace d = derived_algebra(sc);
  Subspace z = center(sc);
  Subspace zd = intersect(z, d);
  // central generators complementing Z cap D inside Z
  std::vector<Vec> zs;
  {
    std::vector<Vec> cur = zd.basis();
    for (const auto& v : z.basis()) {
      cur.push_back(v);
      if (Subspace::span(n, cur).dim() == cur.size()) zs.push_back(v);
      else cur.pop_back();
    }
  }
  std::vector<Vec> hb = d.basis();
  {
    std::vector<Vec> cur = d.basis();
    cur.insert(cur.end(), zs.begin(), zs.end());
    for (std::size_t i = 0; i < n && cur.size() < n; ++i) {
      cur.push_back(Subspace::unit(n, i));
      if (Subspace::span(n, cur).dim() == cur.size()) hb.push_back(Subspace::unit(n, i));
      else cur.pop_back();
    }
  }
  out.essential_dimension = hb.size();
  if (!hb.empty()) {
    StructureConstants h = restrict_to(sc, hb);
    TwoA2Split sp = split_2a2(h);
    if (sp.bases) {
      for (const auto& fb : *sp.bases) {
        std::vector<Vec> amb;
        for (const auto& c : fb) {
          Vec v(n, Q(0));
          for (std::size_t i = 0; i < hb.size(); ++i)
            for (std::size_t k = 0; k < n; ++k) v[k] += c[i] * hb[i][k];
          amb.push_back(v);
        }
        out.factor_bases.push_back(amb);
        out.factors.push_back(restrict_to(sc, amb));
      }
    } else {
      out.factor_bases.push_back(hb);
      out.factors.push_back(h);
    }
  }
  for (const auto& v : zs) {
    out.factor_bases.push_back({v});
    out.factors.push_back(StructureConstants(1));
  }
  return out;
}

// ------------------------------------------------------- invariant signature

struct InvariantSignature {
  std::size_t dim = 0, derived_dim = 0, center_dim = 0;
  bool unimodular = false, nilpotent = false, solvable = false;
  std::vector<std::size_t> central_dims, derived_dims;
  Inertia killing;
  struct Behr {
    int major = 0, minor = 0, zero = 0;  // {n+, n-} unordered, n0
    bool a_zero = true;
    bool operator==(const Behr&) const = default;
  };
  std::optional<Behr> behr;
  bool operator==(const InvariantSignature&) const = default;
};

inline InvariantSignature invariant_signature(const StructureConstants& sc) {
  InvariantSignature s;
  s.dim = sc.dim();
  s.derived_dim = derived_algebra(sc).dim();
  s.center_dim = center(sc).dim();
  s.unimodular = is_unimodular(sc);
  SeriesProfile p = series_profile(sc);
  s.nilpotent = p.nilpotent;
  s.solvable = p.solvable;
  s.central_dims = p.central_dims;
  s.derived_dims = p.derived_dims;
  s.killing = inertia(killing_form(sc));
  if (sc.dim() == 3) {
    BehrForm b = behr_form(sc);
    Inertia in = inertia(b.n);
    InvariantSignature::Behr bh;
    bh.major = std::max(in.pos, in.neg);
    bh.minor = std::min(in.pos, in.neg);
    bh.zero = in.zero;
    bh.a_zero = std::all_of(b.a.begin(), b.a.end(), [](const Q& x) { return sgn(x) == 0; });
    s.behr = bh;
  }
  return s;
}

}  // namespace lieclass
