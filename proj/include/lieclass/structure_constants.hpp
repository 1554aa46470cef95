#pragma once

#include "matrix.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieclass {

struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Dense tensor C^k_ij, indices 0-based internally.
template <class F>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::size_t n) : n_(n), c_(n * n * n, F(0)) {
    if (n == 0 || n > 12) throw StructuralError("dimension must be in 1..12, got " + std::to_string(n));
  }

  std::size_t dim() const { return n_; }
  F& at(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * n_ + j) * n_ + k]; }
  const F& at(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }

  /// Sets C^k_ij = v and C^k_ji = -v.
  void set(std::size_t i, std::size_t j, std::size_t k, const F& v) {
    check(i, j, k);
    at(i, j, k) = v;
    at(j, i, k) = -v;
  }

  /// [x, y] for coordinate vectors x, y.
  std::vector<F> bracket(const std::vector<F>& x, const std::vector<F>& y) const {
    std::vector<F> out(n_, F(0));
    for (std::size_t i = 0; i < n_; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_zero(y[j])) continue;
        F xy = x[i] * y[j];
        for (std::size_t k = 0; k < n_; ++k)
          if (!is_zero(at(i, j, k))) out[k] += xy * at(i, j, k);
      }
    }
    return out;
  }

  /// [e_i, e_j] as a coordinate vector.
  std::vector<F> bracket_basis(std::size_t i, std::size_t j) const {
    std::vector<F> out(n_);
    for (std::size_t k = 0; k < n_; ++k) out[k] = at(i, j, k);
    return out;
  }

  bool zero() const {
    for (const auto& x : c_)
      if (!is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Tensor& a, const Tensor& b) { return a.n_ == b.n_ && a.c_ == b.c_; }
  friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

  void check(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= n_ || j >= n_ || k >= n_)
      throw StructuralError("index out of range: (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                            std::to_string(k + 1) + ") for dim " + std::to_string(n_));
  }

 private:
  std::size_t n_ = 0;
  std::vector<F> c_;
};

using StructureConstants = Tensor<Q>;

/// One bracket term [e_i, e_j] contains c e_k, 1-based indices.
struct BracketEntry {
  int i, j, k;
  Q c;
};

inline StructureConstants from_brackets(std::size_t n, const std::vector<BracketEntry>& entries) {
  StructureConstants sc(n);
  for (const auto& e : entries) {
    if (e.i < 1 || e.j < 1 || e.k < 1 || e.i > static_cast<int>(n) || e.j > static_cast<int>(n) ||
        e.k > static_cast<int>(n))
      throw StructuralError("bracket index out of range: (" + std::to_string(e.i) + "," + std::to_string(e.j) + "," +
                            std::to_string(e.k) + ") for dim " + std::to_string(n));
    if (e.i == e.j) throw StructuralError("bracket [e_i, e_i] must vanish (i = " + std::to_string(e.i) + ")");
    std::size_t i = e.i - 1, j = e.j - 1, k = e.k - 1;
    sc.set(i, j, k, sc.at(i, j, k) + e.c);
  }
  return sc;
}

/// Canonical bracket list (i < j, nonzero entries), 1-based.
inline std::vector<BracketEntry> to_brackets(const StructureConstants& sc) {
  std::vector<BracketEntry> out;
  for (std::size_t i = 0; i < sc.dim(); ++i)
    for (std::size_t j = i + 1; j < sc.dim(); ++j)
      for (std::size_t k = 0; k < sc.dim(); ++k)
        if (sgn(sc.at(i, j, k)) != 0)
          out.push_back({static_cast<int>(i + 1), static_cast<int>(j + 1), static_cast<int>(k + 1), sc.at(i, j, k)});
  return out;
}

// ---------------------------------------------------------------- validation

struct Violation {
  enum class Kind { antisymmetry, jacobi };
  Kind kind;
  std::vector<int> indices;  // 1-based: (i,j) or (i,j,l)
  Vec residual;              // coefficient vector of the failing expression

  std::string describe() const {
    std::string s = kind == Kind::antisymmetry ? "antisymmetry" : "jacobi";
    s += " at (";
    for (std::size_t a = 0; a < indices.size(); ++a) s += (a ? "," : "") + std::to_string(indices[a]);
    s += "), residual ";
    bool first = true;
    for (std::size_t k = 0; k < residual.size(); ++k) {
      if (sgn(residual[k]) == 0) continue;
      std::string c = residual[k].get_str();
      if (!first && c[0] != '-') s += "+";
      if (c == "1") c = "";
      else if (c == "-1") c = "-";
      else c += "*";
      s += c + "e" + std::to_string(k + 1);
      first = false;
    }
    if (first) s += "0";
    return s;
  }
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

/// Checks antisymmetry and the Jacobi identity, reporting every failure.
inline ValidationReport validate(const StructureConstants& sc) {
  ValidationReport rep;
  std::size_t n = sc.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec r(n);
      bool bad = false;
      for (std::size_t k = 0; k < n; ++k) {
        r[k] = sc.at(i, j, k) + sc.at(j, i, k);
        if (i == j) r[k] = sc.at(i, i, k);
        bad |= sgn(r[k]) != 0;
      }
      if (bad)
        rep.violations.push_back(
            {Violation::Kind::antisymmetry, {static_cast<int>(i + 1), static_cast<int>(j + 1)}, r});
    }
  auto e = [n](std::size_t a) {
    Vec v(n, Q(0));
    v[a] = 1;
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = j + 1; l < n; ++l) {
        Vec r = sc.bracket(sc.bracket(e(i), e(j)), e(l));
        Vec r2 = sc.bracket(sc.bracket(e(j), e(l)), e(i));
        Vec r3 = sc.bracket(sc.bracket(e(l), e(i)), e(j));
        bool bad = false;
        for (std::size_t k = 0; k < n; ++k) {
          r[k] += r2[k] + r3[k];
          bad |= sgn(r[k]) != 0;
        }
        if (bad)
          rep.violations.push_back({Violation::Kind::jacobi,
                                    {static_cast<int>(i + 1), static_cast<int>(j + 1), static_cast<int>(l + 1)},
                                    r});
      }
  return rep;
}

// -------------------------------------------------------------- basis change

struct BasisChange {
  QMatrix m;
  Q det;
  int orientation;

  explicit BasisChange(QMatrix mat) : m(std::move(mat)) {
    if (m.rows() != m.cols()) throw std::invalid_argument("basis change must be square");
    det = determinant(m);
    if (sgn(det) == 0) throw std::invalid_argument("basis change is singular");
    orientation = sgn(det);
  }
};

inline int orientation_sign(const BasisChange& b) { return b.orientation; }

/// C'^k_ij = (A^-1)^k_h C^h_fg A^f_i A^g_j; the columns of A are the new basis.
template <class F>
Tensor<F> apply_basis_change(const Tensor<F>& c, const Matrix<F>& a, const Matrix<F>& ainv) {
  std::size_t n = c.dim();
  if (a.rows() != n || a.cols() != n) throw std::invalid_argument("basis change dimension mismatch");
  // t[f][j][h] = sum_g C^h_fg A^g_j
  std::vector<F> t(n * n * n, F(0)), s(n * n * n, F(0));
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h) {
        const F& x = c.at(f, g, h);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!is_zero(a(g, j))) t[(f * n + j) * n + h] += x * a(g, j);
      }
  // s[i][j][h] = sum_f A^f_i t[f][j][h]
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t i = 0; i < n; ++i) {
      if (is_zero(a(f, i))) continue;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t h = 0; h < n; ++h)
          if (!is_zero(t[(f * n + j) * n + h])) s[(i * n + j) * n + h] += a(f, i) * t[(f * n + j) * n + h];
    }
  Tensor<F> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t h = 0; h < n; ++h) {
        const F& x = s[(i * n + j) * n + h];
        if (is_zero(x)) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (!is_zero(ainv(k, h))) out.at(i, j, k) += ainv(k, h) * x;
      }
  return out;
}

template <class F>
Tensor<F> apply_basis_change(const Tensor<F>& c, const Matrix<F>& a) {
  auto inv = inverse(a);
  if (!inv) throw std::invalid_argument("basis change is singular");
  return apply_basis_change(c, a, *inv);
}

inline StructureConstants apply_basis_change(const StructureConstants& c, const BasisChange& b) {
  return apply_basis_change(c, b.m);
}

/// Matrix of ad e_i: entry (k, j) = C^k_ij.
inline QMatrix adjoint_matrix(const StructureConstants& sc, std::size_t i) {
  std::size_t n = sc.dim();
  if (i >= n) throw std::out_of_range("generator index out of range");
  QMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) m(k, j) = sc.at(i, j, k);
  return m;
}

/// Matrix of ad x for a coordinate vector x.
inline QMatrix ad(const StructureConstants& sc, const Vec& x) {
  std::size_t n = sc.dim();
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m(k, j) += x[i] * sc.at(i, j, k);
  }
  return m;
}

// ------------------------------------------------------- trace decomposition

struct TraceDecomposition {
  StructureConstants tracefree;
  Vec vector;

  /// D^k_ij + delta^k_i v_j - delta^k_j v_i
  StructureConstants recombine() const {
    StructureConstants c = tracefree;
    std::size_t n = c.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        c.at(i, j, i) += vector[j];
        c.at(i, j, j) -= vector[i];
      }
    return c;
  }
};

inline TraceDecomposition trace_decompose(const StructureConstants& sc) {
  std::size_t n = sc.dim();
  if (n < 2) throw std::domain_error("trace decomposition needs dim >= 2");
  Vec v(n, Q(0));
  for (std::size_t i = 0; i < n; ++i) {
    Q tr = 0;
    for (std::size_t k = 0; k < n; ++k) tr += sc.at(i, k, k);
    v[i] = tr / Q(1 - static_cast<long>(n));
  }
  StructureConstants d = sc;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d.at(i, j, i) -= v[j];
      d.at(i, j, j) += v[i];
    }
  return {d, v};
}

}  // namespace lieclass
