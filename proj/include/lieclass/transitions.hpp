#pragma once

#include "classifier.hpp"
#include "ratfunc.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

namespace lieclass {

struct ContractionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using RatMatrix = Matrix<RatFunc>;
using RatTensor = Tensor<RatFunc>;
using PathParams = std::map<std::string, RatFunc>;

inline const std::array<Q, 3>& sample_times() {
  static const std::array<Q, 3> ts = {Q(1), Q(1, 2), Q(1, 4)};
  return ts;
}

inline RatMatrix to_ratmatrix(const QMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = RatFunc(m(i, j));
  return r;
}

inline RatTensor to_rattensor(const StructureConstants& sc) {
  RatTensor r(sc.dim());
  std::size_t n = sc.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(sc.at(i, j, k))) r.at(i, j, k) = RatFunc(sc.at(i, j, k));
  return r;
}

/// Curve of basis changes A_t, t in (0, 1]; columns of A_t are the moving basis.
class ContractionFamily {
 public:
  enum class Kind { iw, saletan, general, trivial };

  /// A_t = B diag(E_m, t E_{n-m}).
  static ContractionFamily iw(std::size_t n, std::size_t m, std::optional<QMatrix> basis = std::nullopt) {
    if (m >= n) throw ContractionError("IW split needs m < n, got m = " + std::to_string(m));
    QMatrix b = basis ? *basis : QMatrix::identity(n);
    if (b.rows() != n || b.cols() != n) throw ContractionError("IW basis must be " + std::to_string(n) + "x" + std::to_string(n));
    if (sgn(determinant(b)) == 0) throw ContractionError("IW basis is singular");
    RatMatrix d = RatMatrix::identity(n);
    for (std::size_t i = m; i < n; ++i) d(i, i) = RatFunc::t();
    ContractionFamily f(Kind::iw, to_ratmatrix(b) * d);
    f.m_ = m;
    f.basis_ = b;
    f.require_singular_start();
    return f;
  }
  /// A_t = U + t V with U singular.
  static ContractionFamily saletan(const QMatrix& u, const QMatrix& v) {
    if (u.rows() != u.cols() || v.rows() != u.rows() || v.cols() != u.cols())
      throw ContractionError("Saletan matrices must be square of equal size");
    RatMatrix a = to_ratmatrix(u) + RatFunc::t() * to_ratmatrix(v);
    ContractionFamily f(Kind::saletan, a);
    f.u_ = u;
    f.v_ = v;
    f.require_singular_start();
    return f;
  }
  static ContractionFamily general(const RatMatrix& a) { return ContractionFamily(Kind::general, a); }
  static ContractionFamily trivial(std::size_t n) {
    return ContractionFamily(Kind::trivial, RatFunc::t() * RatMatrix::identity(n));
  }

  Kind kind() const { return kind_; }
  std::string kind_name() const {
    switch (kind_) {
      case Kind::iw: return "iw";
      case Kind::saletan: return "saletan";
      case Kind::general: return "general";
      case Kind::trivial: return "trivial";
    }
    return "?";
  }
  std::size_t dim() const { return a_.rows(); }
  const RatMatrix& matrix() const { return a_; }
  std::size_t split() const { return m_; }
  const std::optional<QMatrix>& basis() const { return basis_; }
  const std::optional<QMatrix>& u() const { return u_; }
  const std::optional<QMatrix>& v() const { return v_; }

  QMatrix at(const Q& t) const {
    QMatrix m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) {
        auto x = a_(i, j).eval(t);
        if (!x) throw ContractionError("family entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") has a pole at t = " + t.get_str());
        m(i, j) = *x;
      }
    return m;
  }

  /// Same family acting on V + R: block diag(A_t, 1).
  ContractionFamily extended() const {
    std::size_t n = dim();
    RatMatrix a(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = a_(i, j);
    a(n, n) = RatFunc(1);
    ContractionFamily f(kind_, a);
    f.m_ = m_;
    auto grow = [n](const std::optional<QMatrix>& m, const Q& corner) -> std::optional<QMatrix> {
      if (!m) return std::nullopt;
      QMatrix r(n + 1, n + 1);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = (*m)(i, j);
      r(n, n) = corner;
      return r;
    };
    if (kind_ == Kind::iw) {
      // the extra vector is kept, so move it in front of the scaled block
      QMatrix b = *grow(basis_, Q(1));
      QMatrix p(n + 1, n + 1);
      for (std::size_t j = 0; j < m_; ++j) p(j, j) = 1;
      p(n, m_) = 1;
      for (std::size_t j = m_; j < n; ++j) p(j, j + 1) = 1;
      return iw(n + 1, m_ + 1, b * p);
    }
    if (kind_ == Kind::saletan) return saletan(*grow(u_, Q(1)), *grow(v_, Q(0)));
    if (kind_ == Kind::trivial) f.kind_ = Kind::general;
    return f;
  }

 private:
  ContractionFamily(Kind k, RatMatrix a) : kind_(k), a_(std::move(a)) {
    if (a_.rows() == 0 || a_.rows() != a_.cols()) throw ContractionError("family matrix must be square and nonempty");
    for (const Q& t : sample_times())
      if (sgn(determinant(at(t))) == 0) throw ContractionError("family is singular at t = " + t.get_str());
  }
  void require_singular_start() const {
    QMatrix a0(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) a0(i, j) = *a_(i, j).eval(Q(0));
    if (sgn(determinant(a0)) != 0) throw ContractionError("A_0 must be singular for a contraction");
  }

  Kind kind_;
  RatMatrix a_;
  std::size_t m_ = 0;
  std::optional<QMatrix> basis_, u_, v_;
};

/// Template instantiated with parameters depending on t.
inline RatTensor instantiate_path(const AlgebraClass& c, const PathParams& p) {
  for (const Q& t : sample_times()) {
    Params at;
    for (const auto& [k, v] : p) {
      auto x = v.eval(t);
      if (!x) throw ParameterError(c.id + ": path for '" + k + "' has a pole at t = " + t.get_str());
      at[k] = *x;
    }
    if (auto why = c.parameter_violation(at)) throw ParameterError(c.id + " at t = " + t.get_str() + ": " + *why);
  }
  RatTensor r(c.dim);
  for (const auto& e : c.brackets) {
    RatFunc v = e.c.eval(p);
    r.at(e.i - 1, e.j - 1, e.k - 1) += v;
    r.at(e.j - 1, e.i - 1, e.k - 1) -= v;
  }
  return r;
}

inline PathParams constant_path(const Params& p) {
  PathParams r;
  for (const auto& [k, v] : p) r[k] = RatFunc(v);
  return r;
}

/// C(t) = A_t^-1 C A_t A_t as exact rational functions of t.
inline RatTensor conjugate_path(const RatTensor& c, const ContractionFamily& fam) {
  if (fam.dim() != c.dim())
    throw ContractionError("family dimension " + std::to_string(fam.dim()) + " does not match algebra dimension " +
                           std::to_string(c.dim()));
  auto inv = inverse(fam.matrix());
  if (!inv) throw ContractionError("family is not invertible");
  return apply_basis_change(c, fam.matrix(), *inv);
}

/// Entrywise t -> 0; nullopt if some entry has a pole at 0.
inline std::optional<StructureConstants> limit_at_zero(const RatTensor& c) {
  std::size_t n = c.dim();
  StructureConstants out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (c.at(i, j, k).zero()) continue;
        auto v = c.at(i, j, k).limit0();
        if (!v) return std::nullopt;
        out.at(i, j, k) = *v;
      }
  return out;
}

inline std::optional<StructureConstants> contract_limit(const RatTensor& c, const ContractionFamily& fam) {
  auto lim = limit_at_zero(conjugate_path(c, fam));
  if (lim && !validate(*lim).valid()) throw std::logic_error("limit of Lie brackets violates an axiom");
  return lim;
}

inline std::optional<StructureConstants> contract_limit(const StructureConstants& sc, const ContractionFamily& fam) {
  return contract_limit(to_rattensor(sc), fam);
}

struct TransitionCheck {
  ClassificationResult source;  // the algebra at t = 1
  StructureConstants source_constants;  // at t = 1, in the basis A(1)
  ClassificationResult limit;
  StructureConstants limit_constants;
  bool improper = false;
  bool abelian = false;
};

inline TransitionCheck verify_transition_witness(const std::string& source_class, const PathParams& params,
                                                 const ContractionFamily& fam, const Classifier& cl = Classifier()) {
  const AlgebraClass& c = cl.catalog().at(source_class);
  RatTensor path = instantiate_path(c, params);
  auto lim = contract_limit(path, fam);
  if (!lim) throw ContractionError("limit does not exist: some C^k_ij(t) has a pole at t = 0");
  TransitionCheck out;
  Params at1;
  for (const auto& [k, v] : params) at1[k] = *v.eval(Q(1));
  out.source_constants = apply_basis_change(cl.catalog().instantiate(c.id, at1), fam.at(Q(1)));
  out.source = cl.classify(out.source_constants);
  out.limit = cl.classify(*lim);
  out.limit_constants = *lim;
  out.improper = out.limit.same_class(out.source);
  out.abelian = lim->zero();
  return out;
}

inline TransitionCheck verify_transition_witness(const std::string& source_class, const Params& params,
                                                 const ContractionFamily& fam, const Classifier& cl = Classifier()) {
  return verify_transition_witness(source_class, constant_path(params), fam, cl);
}

// ------------------------------------------------------------ family parsing

inline QMatrix parse_qmatrix(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ParseError(what + ": expected a nonempty array of rows");
  std::vector<std::vector<Q>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError(what + ": rows must be arrays");
    std::vector<Q> row;
    for (const auto& x : r) row.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Q(x.get<long>()));
    rows.push_back(row);
  }
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw ParseError(what + ": matrix must be square");
  return QMatrix::from_rows(rows);
}

inline RatMatrix parse_ratmatrix(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ParseError(what + ": expected a nonempty array of rows");
  std::vector<std::vector<RatFunc>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError(what + ": rows must be arrays");
    std::vector<RatFunc> row;
    for (const auto& x : r) {
      if (x.is_string()) row.push_back(parse_ratfunc(x.get<std::string>()));
      else if (x.is_number_integer()) row.push_back(RatFunc(x.get<long>()));
      else throw ParseError(what + ": entries must be integers or strings in t");
    }
    rows.push_back(row);
  }
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw ParseError(what + ": matrix must be square");
  return RatMatrix::from_rows(rows);
}

inline std::vector<std::vector<std::string>> matrix_strings(const QMatrix& m) {
  std::vector<std::vector<std::string>> r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i].push_back(m(i, j).get_str());
  return r;
}

inline std::vector<std::vector<std::string>> matrix_strings(const RatMatrix& m) {
  std::vector<std::vector<std::string>> r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i].push_back(m(i, j).str());
  return r;
}

/// {"kind": "iw", "m": 1, "basis": rows} | {"kind": "saletan", "u", "v"} |
/// {"kind": "general", "matrix"} | {"kind": "trivial", "n"}.
inline ContractionFamily family_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "iw") {
    std::optional<QMatrix> b;
    if (j.contains("basis")) b = parse_qmatrix(j.at("basis"), "basis");
    std::size_t n = b ? b->rows() : j.at("n").get<std::size_t>();
    return ContractionFamily::iw(n, j.at("m").get<std::size_t>(), b);
  }
  if (kind == "saletan") return ContractionFamily::saletan(parse_qmatrix(j.at("u"), "u"), parse_qmatrix(j.at("v"), "v"));
  if (kind == "general") return ContractionFamily::general(parse_ratmatrix(j.at("matrix"), "matrix"));
  if (kind == "trivial") return ContractionFamily::trivial(j.at("n").get<std::size_t>());
  throw ParseError("unknown family kind '" + kind + "'");
}

inline nlohmann::json family_to_json(const ContractionFamily& f) {
  nlohmann::json j;
  j["kind"] = f.kind_name();
  switch (f.kind()) {
    case ContractionFamily::Kind::iw:
      j["m"] = f.split();
      j["basis"] = matrix_strings(*f.basis());
      break;
    case ContractionFamily::Kind::saletan:
      j["u"] = matrix_strings(*f.u());
      j["v"] = matrix_strings(*f.v());
      break;
    case ContractionFamily::Kind::general: j["matrix"] = matrix_strings(f.matrix()); break;
    case ContractionFamily::Kind::trivial: j["n"] = f.dim(); break;
  }
  return j;
}

/// "iw:m" (optionally with a basis matrix) or a JSON matrix of rational functions in t.
inline ContractionFamily parse_contraction_spec(const std::string& text, std::size_t n,
                                                const std::optional<QMatrix>& basis = std::nullopt) {
  std::string s = text;
  s.erase(0, s.find_first_not_of(" \t\n"));
  if (s.rfind("iw:", 0) == 0) {
    std::size_t m = 0;
    try {
      std::size_t used = 0;
      m = std::stoul(s.substr(3), &used);
      if (used != s.size() - 3) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("malformed IW family '" + text + "', expected iw:m");
    }
    return ContractionFamily::iw(n, m, basis);
  }
  if (s == "trivial") return ContractionFamily::trivial(n);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed family spec: " + std::string(e.what()));
  }
  if (j.is_object()) return family_from_json(j);
  RatMatrix a = parse_ratmatrix(j, "family matrix");
  if (a.rows() != n) throw ContractionError("family is " + std::to_string(a.rows()) + "x" + std::to_string(a.rows()) +
                                            " but the algebra has dimension " + std::to_string(n));
  return ContractionFamily::general(a);
}

/// "b=-1+t,a=1/2" -> path parameters.
inline PathParams parse_path(const std::string& text) {
  PathParams p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("malformed path entry '" + item + "', expected name=expr");
    std::string k = item.substr(0, eq);
    k.erase(std::remove_if(k.begin(), k.end(), ::isspace), k.end());
    if (k.empty()) throw ParseError("malformed path entry '" + item + "'");
    p[k] = parse_ratfunc(item.substr(eq + 1));
  }
  return p;
}

// ------------------------------------------------------------------ graph

enum class NodeFilter { all, de, nsd, unimodular };

inline NodeFilter parse_filter(const std::string& s) {
  if (s == "all") return NodeFilter::all;
  if (s == "de") return NodeFilter::de;
  if (s == "nsd") return NodeFilter::nsd;
  if (s == "unimodular") return NodeFilter::unimodular;
  throw ParseError("unknown subset filter '" + s + "' (all, de, nsd, unimodular)");
}

struct GraphNode {
  std::string id, class_id;
  std::string base;       // unoriented id
  std::string chirality;  // "", "R" or "L"
  std::vector<Constraint> where;
  Params sample;
  std::size_t param_count = 0, essential_dimension = 0;
  bool unimodular = false, selfdual = true, abelian = false;

  bool family() const { return param_count > 0; }
};

struct EdgeWitness {
  nlohmann::json family;  // family_from_json input
  std::map<std::string, std::string> path;
};

struct GraphEdge {
  std::string from, to, kind, note;
  bool inferred = false, closure = false;
  std::optional<EdgeWitness> witness;
};

struct TwoPoint {
  bool a_to_b = false, b_to_a = false;
  std::string describe(const std::string& a, const std::string& b) const {
    if (a_to_b && b_to_a) return "indiscrete";
    if (a_to_b) return a + " open, " + b + " closed";
    if (b_to_a) return b + " open, " + a + " closed";
    return "discrete";
  }
};

struct EdgeCheck {
  TransitionCheck check;
  std::optional<std::string> located;
  bool ok = false;
};

inline std::string flip_chirality(const std::string& id) {
  if (id.size() > 2 && id[id.size() - 2] == '^') {
    char c = id.back();
    if (c == 'R') return id.substr(0, id.size() - 1) + "L";
    if (c == 'L') return id.substr(0, id.size() - 1) + "R";
  }
  return id;
}

class TransitionGraph {
 public:
  static const nlohmann::json& bundled_data() {
    static const nlohmann::json j = read_json_file(default_data_path("transitions.json", "LIECLASS_TRANSITIONS"));
    return j;
  }

  static TransitionGraph build(int dim, bool oriented, const Catalog& cat = Catalog::bundled(),
                               const nlohmann::json& data = bundled_data()) {
    if (dim != 3 && dim != 4) throw std::invalid_argument("graphs exist for dim 3 and 4 only");
    TransitionGraph g;
    g.dim_ = dim;
    g.oriented_ = oriented;
    try {
      if (dim == 3) {
        g.load(data.at("3"), cat, nullptr);
      } else {
        const auto& emb = data.at("embed");
        TransitionGraph g3;
        g3.dim_ = 3;
        g3.load(data.at("3"), cat, nullptr);
        g.embed(g3, emb, cat);
        g.load(data.at("4"), cat, &emb);
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("transitions data: ") + e.what());
    } catch (const ParseError& e) {
      throw DataError(std::string("transitions data: ") + e.what());
    }
    g.add_abelian_edges();
    if (oriented) g.orient();
    g.close();
    return g;
  }

  int dim() const { return dim_; }
  bool oriented() const { return oriented_; }
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  std::vector<GraphEdge> base_edges() const {
    std::vector<GraphEdge> r;
    for (const auto& e : edges_)
      if (!e.closure) r.push_back(e);
    return r;
  }

  bool has_node(const std::string& id) const { return index_.count(id) > 0; }
  const GraphNode& node(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownClass("unknown graph node '" + id + "'");
    return nodes_[it->second];
  }
  bool has_edge(const std::string& a, const std::string& b) const { return edge_index_.count({a, b}) > 0; }
  const GraphEdge* edge(const std::string& a, const std::string& b) const {
    auto it = edge_index_.find({a, b});
    return it == edge_index_.end() ? nullptr : &edges_[it->second];
  }
  std::vector<std::string> successors(const std::string& id) const {
    std::vector<std::string> r;
    for (const auto& e : edges_)
      if (e.from == id) r.push_back(e.to);
    return r;
  }
  std::size_t in_degree(const std::string& id) const {
    node(id);
    std::size_t k = 0;
    for (const auto& e : edges_) k += e.to == id;
    return k;
  }
  /// Graph is closed, so reachability is edge presence.
  bool reachable(const std::string& a, const std::string& b) const { return has_edge(a, b); }

  bool in_subset(const GraphNode& v, NodeFilter f) const {
    if (v.abelian) return false;
    switch (f) {
      case NodeFilter::all: return true;
      case NodeFilter::de: return v.essential_dimension == static_cast<std::size_t>(dim_);
      case NodeFilter::nsd: return !v.selfdual;
      case NodeFilter::unimodular: return v.unimodular;
    }
    return false;
  }

  std::vector<std::string> atoms(NodeFilter f = NodeFilter::all) const {
    std::vector<std::string> r;
    for (const auto& v : nodes_) {
      if (!in_subset(v, f)) continue;
      bool closed = true;
      for (const auto& e : edges_)
        if (e.from == v.id && in_subset(node(e.to), f)) closed = false;
      if (closed) r.push_back(v.id);
    }
    return r;
  }

  std::size_t space_dimension(NodeFilter f = NodeFilter::all) const {
    std::size_t d = 0;
    for (const auto& v : nodes_)
      if (in_subset(v, f) || (f == NodeFilter::all && v.abelian)) d = std::max(d, v.param_count);
    return d;
  }

  TwoPoint two_point_topology(const std::string& a, const std::string& b) const {
    node(a);
    node(b);
    if (a == b) throw std::invalid_argument("two-point subspace needs two distinct nodes");
    return {has_edge(a, b), has_edge(b, a)};
  }

  /// Node holding (class, params); the most specific region wins.
  std::optional<std::string> locate(const std::string& class_id, const RParams& params,
                                    Chirality ch = Chirality::selfdual) const {
    const GraphNode* best = nullptr;
    for (const auto& v : nodes_) {
      if (v.class_id != class_id) continue;
      if (!v.chirality.empty() && v.chirality != chirality_name(ch)) continue;
      bool ok = true;
      for (const auto& c : v.where) ok = ok && c.holds(params);
      if (ok && (!best || v.where.size() > best->where.size())) best = &v;
    }
    if (!best) return std::nullopt;
    return best->id;
  }

  /// Replays a stored witness from the edge's source node. The sample is the
  /// template, i.e. the R copy in oriented graphs.
  EdgeCheck check_witness(const GraphEdge& e, const Classifier& cl = Classifier()) const {
    if (!e.witness) throw std::invalid_argument("edge " + e.from + " -> " + e.to + " has no witness");
    const GraphNode& src = node(e.from);
    PathParams p = constant_path(src.sample);
    for (const auto& [k, v] : e.witness->path) p[k] = parse_ratfunc(v);
    ContractionFamily fam = family_from_json(e.witness->family);
    EdgeCheck out;
    out.check = verify_transition_witness(src.class_id, p, fam, cl);
    auto chir = [&](const std::string& cid, const StructureConstants& sc) {
      if (!oriented_ || cl.catalog().at(cid).selfdual) return Chirality::selfdual;
      return cl.chirality(sc);
    };
    out.located = locate(out.check.limit.class_id, out.check.limit.params,
                         chir(out.check.limit.class_id, out.check.limit_constants));
    if (!oriented_) {
      out.ok = out.located && *out.located == e.to;
      return out;
    }
    /// orientation reversal maps witnesses to witnesses, so compare up to a global flip
    if (!out.located) return out;
    Chirality sch = chir(out.check.source.class_id, out.check.source_constants);
    if (src.chirality.empty() || sch == Chirality::selfdual)
      out.ok = *out.located == e.to || flip_chirality(*out.located) == e.to;
    else
      out.ok = (src.chirality == chirality_name(sch) ? *out.located : flip_chirality(*out.located)) == e.to;
    return out;
  }

  std::string to_dot() const {
    std::ostringstream o;
    o << "digraph K" << dim_ << (oriented_ ? "_or" : "") << " {\n";
    for (const auto& v : nodes_) {
      o << "  " << dot_id(v.id) << " [label=" << quote(v.id == v.class_id ? v.id : v.id + "\\n" + v.class_id);
      o << ", shape=" << (v.unimodular ? "doublecircle" : "ellipse");
      if (v.family()) o << ", style=dashed";
      o << "];\n";
    }
    for (const auto& e : edges_) {
      o << "  " << dot_id(e.from) << " -> " << dot_id(e.to) << " [label=" << quote(e.kind);
      if (e.closure) o << ", style=dotted";
      o << "];\n";
    }
    o << "}\n";
    return o.str();
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["dim"] = dim_;
    j["oriented"] = oriented_;
    j["nodes"] = nlohmann::json::array();
    for (const auto& v : nodes_) {
      nlohmann::json n{{"id", v.id},
                       {"class", v.class_id},
                       {"param_count", v.param_count},
                       {"unimodular", v.unimodular},
                       {"selfdual", v.selfdual},
                       {"essential_dimension", v.essential_dimension}};
      n["where"] = nlohmann::json::array();
      for (const auto& c : v.where) n["where"].push_back(c.text);
      if (!v.chirality.empty()) n["chirality"] = v.chirality;
      nodes_json(n, v);
      j["nodes"].push_back(n);
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : edges_) {
      nlohmann::json x{{"from", e.from}, {"to", e.to}, {"kind", e.kind}, {"note", e.note},
                       {"inferred", e.inferred}, {"closure", e.closure}, {"witnessed", e.witness.has_value()}};
      j["edges"].push_back(x);
    }
    return j;
  }

  static std::string dot_id(const std::string& s) {
    bool bare = !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_');
    for (char c : s) bare = bare && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    return bare ? s : quote(s);
  }

 private:
  static std::string quote(const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
      if (c == '"') r += '\\';
      r += c;
    }
    return r + "\"";
  }
  static void nodes_json(nlohmann::json& n, const GraphNode& v) {
    nlohmann::json s = nlohmann::json::object();
    for (const auto& [k, x] : v.sample) s[k] = x.get_str();
    n["sample"] = s;
  }

  void add_node(GraphNode v) {
    if (index_.count(v.id)) throw DataError("duplicate graph node '" + v.id + "'");
    index_[v.id] = nodes_.size();
    nodes_.push_back(std::move(v));
  }
  void add_edge(GraphEdge e) {
    if (!index_.count(e.from) || !index_.count(e.to))
      throw DataError("edge " + e.from + " -> " + e.to + " names an unknown node");
    if (e.from == e.to) throw DataError("self loop at " + e.from);
    if (edge_index_.count({e.from, e.to})) throw DataError("duplicate edge " + e.from + " -> " + e.to);
    edge_index_[{e.from, e.to}] = edges_.size();
    edges_.push_back(std::move(e));
  }

  GraphNode make_node(const std::string& id, const std::string& cls, const std::vector<std::string>& where,
                      const Params& sample, const Catalog& cat) const {
    const AlgebraClass& c = cat.at(cls);
    if (c.dim != static_cast<std::size_t>(dim_)) throw DataError("node " + id + " has class of wrong dimension");
    GraphNode v;
    v.id = v.base = id;
    v.class_id = c.id;
    std::size_t eqs = 0;
    for (const auto& w : where) {
      v.where.push_back(parse_constraint(w));
      eqs += v.where.back().op == "==";
    }
    v.sample = sample;
    for (const auto& w : v.where)
      if (!w.holds(sample)) throw DataError("node " + id + ": sample violates " + w.text);
    if (eqs > c.params.size()) throw DataError("node " + id + " is overdetermined");
    v.param_count = c.params.size() - eqs;
    StructureConstants sc = cat.instantiate(c.id, sample);
    v.unimodular = is_unimodular(sc);
    v.selfdual = c.selfdual;
    v.abelian = sc.zero();
    v.essential_dimension = decompose_direct_sum(sc).essential_dimension;
    return v;
  }

  static Params read_params(const nlohmann::json& j) {
    Params p;
    for (const auto& [k, v] : j.items()) p[k] = parse_rational(v.get<std::string>());
    return p;
  }

  static GraphEdge read_edge(const nlohmann::json& e) {
    GraphEdge x;
    x.from = e.at("from").get<std::string>();
    x.to = e.at("to").get<std::string>();
    x.kind = e.value("kind", std::string("transition"));
    if (x.kind != "transition" && x.kind != "parametric-limit") throw DataError("unknown edge kind '" + x.kind + "'");
    x.note = e.value("note", std::string());
    x.inferred = e.value("inferred", false);
    if (e.contains("witness")) {
      EdgeWitness w;
      w.family = e.at("witness").at("family");
      if (e.at("witness").contains("path"))
        for (const auto& [k, v] : e.at("witness").at("path").items()) w.path[k] = v.get<std::string>();
      x.witness = w;
    }
    return x;
  }

  void load(const nlohmann::json& g, const Catalog& cat, const nlohmann::json*) {
    for (const auto& n : g.at("nodes")) {
      std::vector<std::string> where;
      if (n.contains("where")) where = n.at("where").get<std::vector<std::string>>();
      add_node(make_node(n.at("id").get<std::string>(), n.at("class").get<std::string>(), where,
                         n.contains("sample") ? read_params(n.at("sample")) : Params{}, cat));
    }
    for (const auto& e : g.at("edges")) add_edge(read_edge(e));
  }

  /// K^3 lifted by + R; witness families get an extra kept coordinate.
  void embed(const TransitionGraph& g3, const nlohmann::json& emb, const Catalog& cat) {
    std::map<std::string, std::string> to4;
    for (const auto& v : g3.nodes_) {
      std::string cls = emb.at(v.class_id).get<std::string>();
      std::vector<std::string> where;
      for (const auto& w : v.where) where.push_back(w.text);
      add_node(make_node(cls + (v.where.empty() ? "" : "[" + v.id + "]"), cls, where, v.sample, cat));
      to4[v.id] = nodes_.back().id;
    }
    for (const auto& e : g3.edges_) {
      GraphEdge x = e;
      x.from = to4.at(e.from);
      x.to = to4.at(e.to);
      x.note = "embedded: " + e.note;
      if (e.witness) x.witness->family = family_to_json(family_from_json(e.witness->family).extended());
      add_edge(x);
    }
  }

  void add_abelian_edges() {
    std::string ab;
    for (const auto& v : nodes_)
      if (v.abelian) ab = v.id;
    if (ab.empty()) throw DataError("graph has no abelian node");
    std::vector<std::string> ids;
    for (const auto& v : nodes_)
      if (!v.abelian && !has_edge(v.id, ab)) ids.push_back(v.id);
    for (const auto& id : ids) {
      GraphEdge e;
      e.from = id;
      e.to = ab;
      e.kind = "transition";
      e.note = "trivial contraction t E";
      e.witness = EdgeWitness{nlohmann::json{{"kind", "trivial"}, {"n", dim_}}, {}};
      add_edge(e);
    }
  }

  void orient() {
    std::vector<GraphNode> old = nodes_;
    std::vector<GraphEdge> olde = edges_;
    nodes_.clear();
    edges_.clear();
    index_.clear();
    edge_index_.clear();
    std::map<std::string, std::vector<std::string>> copies;
    for (const auto& v : old) {
      if (v.selfdual) {
        add_node(v);
        copies[v.id] = {v.id};
        continue;
      }
      for (const char* ch : {"R", "L"}) {
        GraphNode c = v;
        c.id = v.id + "^" + ch;
        c.chirality = ch;
        add_node(c);
        copies[v.id].push_back(c.id);
      }
    }
    for (const auto& e : olde) {
      const auto& fs = copies.at(e.from);
      const auto& ts = copies.at(e.to);
      for (const auto& f : fs)
        for (const auto& t : ts) {
          if (fs.size() == 2 && ts.size() == 2 && f.back() != t.back()) continue;
          GraphEdge x = e;
          x.from = f;
          x.to = t;
          add_edge(x);
        }
    }
  }

  void close() {
    std::size_t n = nodes_.size();
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
    for (const auto& e : edges_) r[index_.at(e.from)][index_.at(e.to)] = 1;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (r[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (r[k][j]) r[i][j] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (r[i][i]) throw DataError("transition cycle through " + nodes_[i].id);
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][j] && !has_edge(nodes_[i].id, nodes_[j].id)) {
          GraphEdge e;
          e.from = nodes_[i].id;
          e.to = nodes_[j].id;
          e.kind = "transition";
          e.note = "closure";
          e.closure = true;
          add_edge(e);
        }
    }
  }

  int dim_ = 3;
  bool oriented_ = false;
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::map<std::string, std::size_t> index_;
  std::map<std::pair<std::string, std::string>, std::size_t> edge_index_;
};

}  // namespace lieclass
