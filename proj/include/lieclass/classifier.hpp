#pragma once

#include "catalog.hpp"
#include "normal_form.hpp"

#include <functional>
#include <random>

namespace lieclass {

struct InvalidAlgebra : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ClassificationResult {
  std::string class_id;
  RParams params;
  /// Columns are the template basis in input coordinates:
  /// apply_basis_change(input, *witness) == instantiate(class_id, params).
  std::optional<QMatrix> witness;
  InvariantSignature signature;
  std::optional<NJNF> njnf;
  std::optional<std::string> ideal_type;
  std::optional<Subspace> ideal;

  bool same_class(const ClassificationResult& o) const { return class_id == o.class_id && params == o.params; }
};

namespace detail {

inline void check_input(const StructureConstants& sc) {
  auto rep = validate(sc);
  if (!rep.valid()) throw InvalidAlgebra("not a Lie algebra: " + rep.violations.front().describe());
}

inline Vec lin(const std::vector<Vec>& basis, const Vec& coeffs) {
  Vec v(basis.at(0).size(), Q(0));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += coeffs[i] * basis[i][k];
  return v;
}

inline Vec scaled(const Vec& v, const Q& s) {
  Vec r = v;
  for (auto& x : r) x *= s;
  return r;
}

inline Vec plus(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline std::optional<Params> rational_params(const RParams& p) {
  Params out;
  for (const auto& [k, v] : p) {
    if (!v.is_rational()) return std::nullopt;
    out[k] = v.rational();
  }
  return out;
}

/// Scalars c with charpoly(c m) == charpoly(t); any c when both are nilpotent.
inline std::vector<Q> scale_candidates(const QMatrix& m, const QMatrix& t) {
  Poly pm = charpoly(m), pt = charpoly(t);
  int d = pm.deg();
  std::vector<Q> cands;
  for (int k = 1; k <= d; ++k) {
    Q am = pm[d - k], at = pt[d - k];
    if (sgn(am) == 0) {
      if (sgn(at) != 0) return {};
      continue;
    }
    Q ratio = at / am, r;
    if (!exact_root(abs_q(ratio), k, r)) return {};
    if (sgn(ratio) < 0) {
      if (k % 2 == 0) return {};
      cands = {Q(-r)};
    } else {
      cands = k % 2 == 0 ? std::vector<Q>{r, Q(-r)} : std::vector<Q>{r};
    }
    break;
  }
  if (cands.empty()) {
    for (int k = 1; k <= d; ++k)
      if (sgn(pt[d - k]) != 0) return {};
    return {Q(1)};
  }
  std::vector<Q> ok;
  for (const Q& c : cands) {
    bool good = true;
    Q ck = 1;
    for (int k = 1; k <= d && good; ++k) {
      ck *= c;
      good = ck * pm[d - k] == pt[d - k];
    }
    if (good) ok.push_back(c);
  }
  return ok;
}

/// Invertible p and scalar c with c m p == p t, if rational ones exist.
inline std::optional<std::pair<Q, QMatrix>> similarity(const QMatrix& m, const QMatrix& t) {
  std::size_t n = m.rows();
  for (const Q& c : scale_candidates(m, t)) {
    QMatrix id = QMatrix::identity(n);
    QMatrix sys = kron(id, c * m) - kron(t.transpose(), id);
    auto ker = nullspace(sys);
    if (ker.empty()) continue;
    auto to_mat = [&](const Vec& v) {
      QMatrix p(n, n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) p(i, j) = v[j * n + i];
      return p;
    };
    for (const auto& v : ker)
      if (sgn(determinant(to_mat(v))) != 0) return std::make_pair(c, to_mat(v));
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int tries = 0; tries < 64; ++tries) {
      Vec v(n * n, Q(0));
      for (const auto& k : ker) {
        int a = coef(rng);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += a * k[i];
      }
      QMatrix p = to_mat(v);
      if (sgn(determinant(p)) != 0) return std::make_pair(c, p);
    }
  }
  return std::nullopt;
}

inline std::optional<QMatrix> checked_witness(const StructureConstants& sc, const QMatrix& w,
                                              const StructureConstants& target) {
  if (sgn(determinant(w)) == 0) return std::nullopt;
  if (apply_basis_change(sc, w) != target) return std::nullopt;
  return w;
}

inline QMatrix columns(const std::vector<Vec>& cols) { return QMatrix::from_columns(cols, cols.at(0).size()); }

/// Splits eigen data of a diagonal block list into plain values.
inline std::vector<RealNum> real_values(const std::vector<JordanBlock>& bs) {
  std::vector<RealNum> v;
  for (const auto& b : bs) v.push_back(b.eig.re);
  return v;
}

inline bool all_size_one(const std::vector<JordanBlock>& bs) {
  return std::all_of(bs.begin(), bs.end(), [](const JordanBlock& b) { return b.size == 1; });
}

inline bool any_complex(const std::vector<JordanBlock>& bs) {
  return std::any_of(bs.begin(), bs.end(), [](const JordanBlock& b) { return b.eig.is_complex(); });
}

/// Ratio of the smaller to the larger (by modulus) of two nonzero values.
inline RealNum small_over_big(const RealNum& x, const RealNum& y) {
  return x.abs() <= y.abs() ? x / y : y / x;
}

}  // namespace detail

class Classifier {
 public:
  explicit Classifier(const Catalog& cat = Catalog::bundled()) : cat_(cat) {}

  const Catalog& catalog() const { return cat_; }

  ClassificationResult classify(const StructureConstants& sc) const {
    detail::check_input(sc);
    if (sc.dim() > 4) throw Unsupported("unsupported dimension " + std::to_string(sc.dim()) + " (classification needs n <= 4)");
    ClassificationResult r = classify_raw(sc);
    canonicalize_params(r.class_id, r.params);
    r.signature = invariant_signature(sc);
    if (r.witness) {
      auto p = detail::rational_params(r.params);
      if (!p || apply_basis_change(sc, *r.witness) != cat_.instantiate(r.class_id, *p)) r.witness.reset();
    }
    return r;
  }

  /// +1 when the input is oriented like the template (R), -1 otherwise (L).
  Chirality chirality(const StructureConstants& sc) const {
    ClassificationResult r = classify(sc);
    const AlgebraClass& c = cat_.at(r.class_id);
    if (c.selfdual) throw std::domain_error("chirality undefined: " + r.class_id + " is selfdual");
    StructureConstants t = cat_.instantiate(c.id, c.samples.at(0));
    int a = orientation_invariant(sc, r.class_id), b = orientation_invariant(t, r.class_id);
    if (a == 0 || b == 0) throw std::logic_error("orientation invariant vanished for " + r.class_id);
    return (a == b) != c.template_left ? Chirality::R : Chirality::L;
  }

  /// Sign invariant under GL+ that flips under reflections (non-selfdual classes).
  static int orientation_invariant(const StructureConstants& sc, const std::string& id) {
    std::size_t n = sc.dim();
    if (n == 3) {
      Inertia in = inertia(behr_form(sc).n);
      return in.pos > in.neg ? 1 : in.pos < in.neg ? -1 : 0;
    }
    if (n != 4) return 0;
    if (id == "A_{4,12}") {
      auto pos = ideal_in_position(sc, IdealType::vtype);
      if (!pos) return 0;
      Subspace d = derived_algebra(sc);
      Vec v = vtype_generator(sc, pos->first, d);
      Vec x = pos->second;
      Vec d0 = d.basis()[0];
      return sgn(determinant(detail::columns({d0, sc.bracket(x, d0), v, x})));
    }
    auto pos = ideal_in_position(sc, IdealType::heisenberg);
    if (!pos) return 0;
    auto [z, h2, h3] = heisenberg_frame(sc, pos->first);
    (void)z;
    Vec x = pos->second;
    Q tr = ad(sc, x).trace();
    if (sgn(tr) == 0) return 0;
    if (sgn(tr) < 0) x = detail::scaled(x, Q(-1));
    return sgn(determinant(detail::columns({sc.bracket(h2, h3), h2, h3, x})));
  }

  /// Basis (z, h2, h3) of a Heisenberg ideal with z = [h2, h3] central.
  static std::tuple<Vec, Vec, Vec> heisenberg_frame(const StructureConstants& sc, const Subspace& h) {
    Subspace z = bracket(sc, h, h);
    std::vector<Vec> cur = z.basis(), rest;
    for (const auto& v : h.basis()) {
      cur.push_back(v);
      if (Subspace::span(sc.dim(), cur).dim() == cur.size()) rest.push_back(v);
      else cur.pop_back();
    }
    return {sc.bracket(rest.at(0), rest.at(1)), rest.at(0), rest.at(1)};
  }

  /// Element v of a V-type hyperplane with ad v = -id on the derived algebra.
  static Vec vtype_generator(const StructureConstants& sc, const Subspace& h, const Subspace& d) {
    for (const auto& u : h.basis()) {
      if (d.contains(u)) continue;
      QMatrix m = detail::restricted_ad(sc, d.basis(), u);
      Q c = m(0, 0);
      if (sgn(c) == 0) continue;
      return detail::scaled(u, Q(-1 / c));
    }
    throw std::logic_error("hyperplane is not of type V");
  }

 private:
  ClassificationResult make(const std::string& id, RParams p = {}) const {
    ClassificationResult r;
    r.class_id = id;
    r.params = std::move(p);
    return r;
  }

  ClassificationResult classify_raw(const StructureConstants& sc) const {
    std::size_t n = sc.dim();
    if (sc.zero()) {
      auto r = make(n == 1 ? "A_1" : std::to_string(n) + "A_1");
      r.witness = QMatrix::identity(n);
      return r;
    }
    if (n == 2) return classify_a2(sc);

    DirectSum ds = decompose_direct_sum(sc);
    std::size_t k = n - ds.essential_dimension;
    if (k > 0) return classify_split(sc, ds);

    if (n == 4) {
      TwoA2Split sp = split_2a2(sc);
      if (sp.is_2a2) {
        auto r = make("2A_2");
        if (sp.bases) {
          const auto& b = *sp.bases;
          r.witness = detail::columns({b[0][0], b[0][1], b[1][0], b[1][1]});
        }
        return r;
      }
    }

    Subspace d = derived_algebra(sc);
    if (d.dim() == n) {
      if (n != 3) throw Unsupported("semisimple part of unexpected dimension");
      Inertia in = inertia(killing_form(sc));
      bool definite = in.zero == 0 && (in.pos == 0 || in.neg == 0);
      return make(definite ? "A_{3,9}" : "A_{3,8}");
    }

    Codim1Ideals ids = codim1_ideals(sc);
    for (IdealType t : {IdealType::abelian, IdealType::heisenberg, IdealType::vtype})
      for (const auto& h : ids.ideals)
        if (h.type == t) {
          ClassificationResult r;
          if (t == IdealType::abelian) r = abelian_stratum(sc, h.space);
          else if (t == IdealType::heisenberg) r = heisenberg_stratum(sc, h.space);
          else r = vtype_stratum(sc, h.space);
          r.ideal_type = ideal_type_name(t);
          r.ideal = h.space;
          return r;
        }
    if (ids.irrational_skipped) throw Unsupported("codim-1 ideal needs an irrational direction");
    throw Unsupported("no classification path for this algebra");
  }

  ClassificationResult classify_a2(const StructureConstants& sc) const {
    Subspace d = derived_algebra(sc);
    Vec dv = d.basis()[0];
    Vec x = d.complement()[0];
    Q lam = coordinates({dv}, sc.bracket(x, dv))[0];
    auto r = make("A_2");
    r.witness = detail::columns({dv, detail::scaled(x, 1 / lam)});
    r.ideal_type = "I";
    r.ideal = d;
    return r;
  }

  ClassificationResult classify_split(const StructureConstants& sc, const DirectSum& ds) const {
    std::size_t n = sc.dim();
    const auto& hb = ds.factor_bases[0];
    ClassificationResult inner = classify_raw(ds.factors[0]);
    std::size_t k = n - ds.essential_dimension;
    std::string id;
    if (ds.essential_dimension == 2) id = (k == 1 ? std::string("A_1+") : std::to_string(k) + "A_1+") + inner.class_id;
    else id = "A_1+" + inner.class_id;
    auto r = make(id, inner.params);
    r.njnf = inner.njnf;
    if (inner.witness) {
      std::vector<Vec> cols;
      for (std::size_t j = 0; j < inner.witness->cols(); ++j) cols.push_back(detail::lin(hb, inner.witness->column(j)));
      for (std::size_t f = 1; f < ds.factor_bases.size(); ++f) cols.push_back(ds.factor_bases[f][0]);
      r.witness = detail::columns(cols);
    }
    return r;
  }

  /// Witness for ideal strata where the ideal is abelian: f_n = c w, f_i = B p_i.
  std::optional<QMatrix> abelian_witness(const StructureConstants& sc, const Subspace& j, const Vec& w,
                                         const QMatrix& m, const std::string& id, const RParams& p) const {
    auto rp = detail::rational_params(p);
    if (!rp) return std::nullopt;
    RParams cp = p;
    canonicalize_params(id, cp);
    auto crp = detail::rational_params(cp);
    StructureConstants t = cat_.instantiate(id, *crp);
    std::size_t n = sc.dim();
    Subspace jt = Subspace::span(n, [&] {
      std::vector<Vec> v;
      for (std::size_t i = 0; i + 1 < n; ++i) v.push_back(Subspace::unit(n, i));
      return v;
    }());
    QMatrix mt = detail::restricted_ad(t, jt.basis(), Subspace::unit(n, n - 1));
    auto sim = detail::similarity(m, mt);
    if (!sim) return std::nullopt;
    auto [c, pm] = *sim;
    std::vector<Vec> cols;
    for (std::size_t i = 0; i + 1 < n; ++i) cols.push_back(detail::lin(j.basis(), pm.column(i)));
    cols.push_back(detail::scaled(w, c));
    return detail::checked_witness(sc, detail::columns(cols), t);
  }

  ClassificationResult abelian_stratum(const StructureConstants& sc, const Subspace& j) const {
    std::size_t n = sc.dim();
    Vec w = j.complement().at(0);
    QMatrix m = restricted_adjoint(sc, j, w);
    auto blocks = real_jordan_form(m);
    NJNF nj = normalize(blocks);
    const auto& b = nj.blocks;
    std::string id;
    RParams p;
    if (n == 3) {
      if (b.size() == 1 && !b[0].eig.is_complex()) {
        id = b[0].eig.re.sign() == 0 ? "A_{3,1}" : "A_{3,2}";
      } else if (detail::any_complex(b)) {
        if (b[0].eig.re.sign() == 0) id = "A_{3,6}";
        else id = "A_{3,7}", p["a"] = b[0].eig.re.abs() / b[0].eig.im;
      } else {
        auto v = detail::real_values(b);
        if (v[0].sign() == 0 || v[1].sign() == 0) id = "A_1+A_2";
        else if (v[0] == v[1]) id = "A_{3,3}";
        else if (v[0] == -v[1]) id = "A_{3,4}";
        else id = "A_{3,5}", p["a"] = detail::small_over_big(v[0], v[1]);
      }
    } else {
      if (b.size() == 1) {
        id = b[0].eig.re.sign() == 0 ? "A_{4,1}" : "A_{4,4}";
      } else if (detail::any_complex(b)) {
        const JordanBlock& cb = b[0].eig.is_complex() ? b[0] : b[1];
        const JordanBlock& rb = b[0].eig.is_complex() ? b[1] : b[0];
        RealNum nu = rb.eig.re, beta = cb.eig.re, sigma = cb.eig.im;
        int s = beta.sign() != 0 ? beta.sign() : nu.sign();
        id = "A_{4,6}";
        p["a"] = (s < 0 ? -nu : nu) / sigma;
        p["b"] = beta.abs() / sigma;
      } else if (!detail::all_size_one(b)) {
        const JordanBlock& jb = b[0].size == 2 ? b[0] : b[1];
        const JordanBlock& ob = b[0].size == 2 ? b[1] : b[0];
        if (jb.eig.re.sign() == 0) id = "A_{4,3}";
        else id = "A_{4,2}", p["a"] = ob.eig.re / jb.eig.re;
      } else {
        // leading canonical eigenvalue is 1; the other two are (a, b)
        id = "A_{4,5}";
        RealNum x = b[1].eig.re, y = b[2].eig.re;
        if (x > y) std::swap(x, y);
        p["a"] = x;
        p["b"] = y;
      }
    }
    auto r = make(id, p);
    r.njnf = nj;
    r.witness = abelian_witness(sc, j, w, m, id, p);
    return r;
  }

  ClassificationResult heisenberg_stratum(const StructureConstants& sc, const Subspace& h) const {
    auto [z, h2, h3] = heisenberg_frame(sc, h);
    Vec w = h.complement().at(0);
    std::vector<Vec> frame{z, h2, h3};
    QMatrix nq(2, 2);
    for (std::size_t c = 0; c < 2; ++c) {
      Vec co = coordinates(frame, sc.bracket(w, c == 0 ? h2 : h3));
      nq(0, c) = co[1];
      nq(1, c) = co[2];
    }
    NJNF nj = normalize(real_jordan_form(nq));
    const auto& b = nj.blocks;
    std::string id;
    RParams p;
    if (detail::any_complex(b)) {
      if (b[0].eig.re.sign() == 0) id = "A_{4,10}";
      else id = "A_{4,11}", p["a"] = b[0].eig.re.abs() / b[0].eig.im;
    } else if (b.size() == 1) {
      if (b[0].eig.re.sign() == 0) throw Unsupported("nilpotent action on a Heisenberg ideal without abelian ideal");
      id = "A_{4,7}";
    } else {
      auto v = detail::real_values(b);
      if (v[0] == -v[1]) id = "A_{4,8}";
      else id = "A_{4,9}", p["b"] = detail::small_over_big(v[0], v[1]);
    }
    auto r = make(id, p);
    r.njnf = nj;
    r.witness = heisenberg_witness(sc, frame, w, nq, id, p);
    return r;
  }

  std::optional<QMatrix> heisenberg_witness(const StructureConstants& sc, const std::vector<Vec>& frame,
                                            const Vec& w, const QMatrix& nq, const std::string& id,
                                            const RParams& p) const {
    auto rp = detail::rational_params(p);
    if (!rp) return std::nullopt;
    StructureConstants t = cat_.instantiate(id, *rp);
    QMatrix nt(2, 2);
    Vec rho(2);
    for (std::size_t c = 0; c < 2; ++c) {
      Vec v = t.bracket(Subspace::unit(4, 3), Subspace::unit(4, c + 1));
      nt(0, c) = v[1];
      nt(1, c) = v[2];
      rho[c] = v[0];
    }
    auto sim = detail::similarity(nq, nt);
    if (!sim) return std::nullopt;
    auto [c, pm] = *sim;
    std::vector<Vec> hb{frame[1], frame[2]};
    Vec f2 = detail::lin(hb, pm.column(0)), f3 = detail::lin(hb, pm.column(1));
    Vec f1 = sc.bracket(f2, f3);
    Vec cw = detail::scaled(w, c);
    std::vector<Vec> fr{f1, f2, f3};
    Q r2 = coordinates(fr, sc.bracket(cw, f2))[0];
    Q r3 = coordinates(fr, sc.bracket(cw, f3))[0];
    // [a f2 + b f3, f2] = -b f1 and [a f2 + b f3, f3] = a f1
    Q beta = r2 - rho[0], alpha = rho[1] - r3;
    Vec f4 = detail::plus(cw, detail::plus(detail::scaled(f2, alpha), detail::scaled(f3, beta)));
    return detail::checked_witness(sc, detail::columns({f1, f2, f3, f4}), t);
  }

  ClassificationResult vtype_stratum(const StructureConstants& sc, const Subspace& h) const {
    Subspace d = derived_algebra(sc);
    Vec x = h.complement().at(0);
    QMatrix mx = detail::restricted_ad(sc, d.basis(), x);
    Q tr = mx.trace();
    QMatrix mp = mx - (tr / 2) * QMatrix::identity(2);
    auto blocks = real_jordan_form(mp);
    if (!detail::any_complex(blocks)) throw Unsupported("V-type stratum outside the catalog");
    auto r = make("A_{4,12}");
    r.njnf = normalize(real_jordan_form(mx));
    // witness: v with ad v|D = -1, f4 = (x + t v)/sigma, then kill [f3, f4]
    Vec v = vtype_generator(sc, h, d);
    Q det = mp(0, 0) * mp(1, 1) - mp(0, 1) * mp(1, 0), sigma;
    if (exact_root(det, 2, sigma)) {
      Vec f4 = detail::scaled(detail::plus(x, detail::scaled(v, tr / 2)), 1 / sigma);
      f4 = detail::plus(f4, sc.bracket(v, f4));
      Vec f1 = d.basis()[0];
      Vec f2 = sc.bracket(f4, f1);
      r.witness = detail::checked_witness(sc, detail::columns({f1, f2, v, f4}), cat_.instantiate("A_{4,12}"));
    }
    return r;
  }

  const Catalog& cat_;
};

inline ClassificationResult classify(const StructureConstants& sc) { return Classifier().classify(sc); }

// ------------------------------------------------------------------ duality

struct DualityVerdict {
  bool selfdual = false;
  std::optional<QMatrix> witness;  // orientation-reversing, fixes the tensor
  std::string method;
};

/// Signed permutation e_i -> s_i e_{perm_i} as a matrix (columns are images).
inline QMatrix signed_permutation(const std::vector<std::size_t>& perm, const std::vector<int>& signs) {
  std::size_t n = perm.size();
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(perm[i], i) = signs[i];
  return m;
}

struct SignedPermutationSearch {
  std::optional<QMatrix> witness;
  std::size_t nodes = 0;
};

/// Backtracking over signed permutations fixing sc; want_det = -1 looks for an
/// orientation-reversing automorphism, +1 for preserving, 0 for any.
inline SignedPermutationSearch search_signed_permutation(const StructureConstants& sc, int want_det = -1) {
  std::size_t n = sc.dim();
  SignedPermutationSearch out;
  std::vector<int> rk(n), supp(n * n);
  for (std::size_t i = 0; i < n; ++i) rk[i] = static_cast<int>(rank(adjoint_matrix(sc, i)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int c = 0;
      for (std::size_t k = 0; k < n; ++k) c += sgn(sc.at(i, j, k)) != 0;
      supp[i * n + j] = c;
    }
  // assignment order: most connected to already chosen indices first
  std::vector<std::size_t> order;
  std::vector<bool> chosen(n, false);
  auto weight = [&](std::size_t a, std::size_t b) {
    int c = 0;
    for (std::size_t k = 0; k < n; ++k) c += (sgn(sc.at(a, b, k)) != 0) + (sgn(sc.at(a, k, b)) != 0);
    return c;
  };
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    long bw = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (chosen[i]) continue;
      long w = rk[i] * 1000L;
      for (std::size_t o : order) w += 100000L * weight(i, o);
      if (w > bw) bw = w, best = i;
    }
    chosen[best] = true;
    order.push_back(best);
  }
  std::vector<std::size_t> perm(n, n);
  std::vector<int> signs(n, 1);
  std::vector<bool> used(n, false), assigned(n, false);
  // C^k_ij == s_i s_j s_k C^{p k}_{p i, p j} for assigned i, j, k
  auto consistent = [&](std::size_t a) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!assigned[i]) continue;
      if (supp[a * n + i] != supp[perm[a] * n + perm[i]]) return false;
      for (std::size_t j = 0; j < n; ++j) {
        if (!assigned[j]) continue;
        if (i != a && j != a) {
          // only triples touching a are new; k == a is checked below
          if (sgn(sc.at(i, j, a)) != 0 || sgn(sc.at(perm[i], perm[j], perm[a])) != 0)
            if (sc.at(i, j, a) != Q(signs[i] * signs[j] * signs[a]) * sc.at(perm[i], perm[j], perm[a])) return false;
          continue;
        }
        for (std::size_t k = 0; k < n; ++k) {
          if (!assigned[k]) continue;
          if (sc.at(i, j, k) != Q(signs[i] * signs[j] * signs[k]) * sc.at(perm[i], perm[j], perm[k])) return false;
        }
      }
    }
    return true;
  };
  auto perm_sign = [&] {
    std::vector<bool> seen(n, false);
    int s = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = perm[j]) seen[j] = true, ++len;
      if (len % 2 == 0) s = -s;
    }
    for (int x : signs) s *= x;
    return s;
  };
  std::function<bool(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == n) {
      if (want_det != 0 && perm_sign() != want_det) return false;
      QMatrix m = signed_permutation(perm, signs);
      if (apply_basis_change(sc, m) != sc) return false;
      out.witness = m;
      return true;
    }
    std::size_t a = order[depth];
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t] || rk[t] != rk[a]) continue;
      for (int s : {1, -1}) {
        ++out.nodes;
        perm[a] = t;
        signs[a] = s;
        used[t] = true;
        assigned[a] = true;
        bool ok = consistent(a) && rec(depth + 1);
        used[t] = false;
        assigned[a] = false;
        if (ok) return true;
      }
    }
    perm[a] = n;
    signs[a] = 1;
    return false;
  };
  rec(0);
  return out;
}

/// Identity on an ideal containing the derived algebra, z -> -z on a central
/// complement. Exists whenever some central vector lies outside D.
inline std::optional<QMatrix> central_reflection(const StructureConstants& sc) {
  DirectSum ds = decompose_direct_sum(sc);
  std::size_t n = sc.dim();
  if (ds.essential_dimension >= n) return std::nullopt;
  std::vector<Vec> cols;
  for (const auto& fb : ds.factor_bases) cols.insert(cols.end(), fb.begin(), fb.end());
  QMatrix b = QMatrix::from_columns(cols, n);
  QMatrix s = QMatrix::identity(n);
  s(n - 1, n - 1) = Q(-1);  // central factors come last
  QMatrix w = b * s * *inverse(b);
  if (apply_basis_change(sc, w) != sc) return std::nullopt;
  return w;
}

inline DualityVerdict duality_verdict(const StructureConstants& sc, const Classifier& cl = Classifier()) {
  DualityVerdict v;
  ClassificationResult r = cl.classify(sc);
  const AlgebraClass& c = cl.catalog().at(r.class_id);
  v.selfdual = c.selfdual;
  if (!v.selfdual) {
    v.method = "catalog";
    return v;
  }
  auto direct = search_signed_permutation(sc, -1);
  if (direct.witness) {
    v.witness = direct.witness;
    v.method = "signed-permutation";
    return v;
  }
  if (auto w = central_reflection(sc)) {
    v.witness = w;
    v.method = "central-reflection";
    return v;
  }
  if (r.witness) {
    auto p = detail::rational_params(r.params);
    StructureConstants t = cl.catalog().instantiate(r.class_id, *p);
    auto tw = search_signed_permutation(t, -1);
    if (tw.witness) {
      QMatrix w = *r.witness;
      QMatrix m = w * *tw.witness * *inverse(w);
      if (apply_basis_change(sc, m) == sc) {
        v.witness = m;
        v.method = "conjugated-template";
        return v;
      }
    }
  }
  v.method = "catalog";
  return v;
}

}  // namespace lieclass
