#pragma once
#include "json.hpp"

#include "classifier.hpp"

namespace lieclass {

/// Input document does not follow the bracket schema; message names the field.
struct SchemaError : ParseError {
  using ParseError::ParseError;
};

namespace detail {
inline Q json_rational(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      throw SchemaError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Q(v.get<long>());
  throw SchemaError(where + ": expected a rational string like \"p/q\"");
}

inline int json_index(const nlohmann::json& b, const char* key, const std::string& where) {
  if (!b.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
  const auto& v = b.at(key);
  if (!v.is_number_integer()) throw SchemaError(where + "." + key + ": expected an integer");
  return v.get<int>();
}
}  // namespace detail

// ------------------------------------------------------------- algebra I/O

inline StructureConstants algebra_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("algebra: expected an object with 'dim' and 'brackets'");
  if (!j.contains("dim")) throw SchemaError("algebra: missing field 'dim'");
  if (!j.at("dim").is_number_integer()) throw SchemaError("dim: expected a positive integer");
  long n = j.at("dim").get<long>();
  if (n < 1 || n > 12) throw SchemaError("dim: must lie in 1..12, got " + std::to_string(n));
  std::vector<BracketEntry> es;
  if (j.contains("brackets")) {
    const auto& bs = j.at("brackets");
    if (!bs.is_array()) throw SchemaError("brackets: expected an array");
    for (std::size_t idx = 0; idx < bs.size(); ++idx) {
      std::string where = "brackets[" + std::to_string(idx) + "]";
      const auto& b = bs[idx];
      if (!b.is_object()) throw SchemaError(where + ": expected an object");
      BracketEntry e{detail::json_index(b, "i", where), detail::json_index(b, "j", where),
                     detail::json_index(b, "k", where), Q(0)};
      if (!b.contains("c")) throw SchemaError(where + ": missing field 'c'");
      e.c = detail::json_rational(b.at("c"), where + ".c");
      if (e.i >= e.j) throw SchemaError(where + ": only i < j pairs are accepted");
      es.push_back(e);
    }
  }
  return from_brackets(static_cast<std::size_t>(n), es);
}

inline StructureConstants parse_algebra(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return algebra_from_json(j);
}

inline nlohmann::json algebra_to_json(const StructureConstants& sc) {
  nlohmann::json bs = nlohmann::json::array();
  for (const auto& e : to_brackets(sc)) bs.push_back({{"i", e.i}, {"j", e.j}, {"k", e.k}, {"c", to_string(e.c)}});
  return {{"dim", sc.dim()}, {"brackets", bs}};
}

// ---------------------------------------------------------------- numbers

inline nlohmann::json realnum_to_json(const RealNum& r) {
  if (r.is_rational()) return to_string(r.rational());
  nlohmann::json p = nlohmann::json::array();
  for (const Q& c : r.poly().coeffs()) p.push_back(to_string(c));
  return {{"minpoly", p}, {"interval", {to_string(r.lo()), to_string(r.hi())}}};
}

inline nlohmann::json matrix_to_json(const QMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline nlohmann::json vec_to_json(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const Q& x : v) a.push_back(to_string(x));
  return a;
}

inline nlohmann::json params_to_json(const RParams& p) {
  nlohmann::json o = nlohmann::json::object();
  for (const auto& [k, v] : p) o[k] = realnum_to_json(v);
  return o;
}

// ------------------------------------------------------------------ NJNF

inline nlohmann::json block_to_json(const JordanBlock& b) {
  nlohmann::json eig;
  if (b.eig.is_complex()) eig = {{"re", realnum_to_json(b.eig.re)}, {"im", realnum_to_json(b.eig.im)}};
  else eig = realnum_to_json(b.eig.re);
  return {{"eig", eig}, {"size", b.size}};
}

inline nlohmann::json njnf_to_json(const NJNF& n) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& b : n.blocks) a.push_back(block_to_json(b));
  return a;
}

inline std::string eig_text(const Eigenvalue& e, bool approx) {
  auto one = [&](const RealNum& r) {
    std::string s = r.str();
    if (approx && !r.is_rational()) s += " ~ " + std::to_string(r.approx());
    return s;
  };
  if (!e.is_complex()) return one(e.re);
  return one(e.re) + " +- " + one(e.im) + "i";
}

inline std::string njnf_text(const NJNF& n, bool approx = false) {
  std::string s;
  for (const auto& b : n.blocks) {
    if (!s.empty()) s += ", ";
    s += "J" + std::to_string(b.size) + "(" + eig_text(b.eig, approx) + ")";
  }
  return s.empty() ? "()" : s;
}

// ------------------------------------------------------------- invariants

inline nlohmann::json inertia_to_json(const Inertia& in) { return {in.pos, in.neg, in.zero}; }

inline nlohmann::json signature_to_json(const InvariantSignature& s) {
  nlohmann::json j = {{"dim", s.dim},
                      {"derived_dim", s.derived_dim},
                      {"center_dim", s.center_dim},
                      {"unimodular", s.unimodular},
                      {"nilpotent", s.nilpotent},
                      {"solvable", s.solvable},
                      {"central_dims", s.central_dims},
                      {"derived_dims", s.derived_dims},
                      {"killing_signature", inertia_to_json(s.killing)}};
  if (s.behr)
    j["behr"] = {{"n_signs", {s.behr->major, s.behr->minor, s.behr->zero}}, {"a_zero", s.behr->a_zero}};
  else
    j["behr"] = nullptr;
  return j;
}

inline nlohmann::json subspace_to_json(const Subspace& s) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : s.basis()) a.push_back(vec_to_json(v));
  return a;
}

// ---------------------------------------------------------------- results

inline nlohmann::json classification_to_json(const ClassificationResult& r, const Catalog& cat) {
  const AlgebraClass& c = cat.at(r.class_id);
  nlohmann::json j = {{"class", r.class_id},
                      {"label", c.label()},
                      {"params", params_to_json(r.params)},
                      {"selfdual", c.selfdual},
                      {"unimodular", r.signature.unimodular},
                      {"decomposable", c.decomposable},
                      {"signature", signature_to_json(r.signature)}};
  j["bianchi"] = c.bianchi ? nlohmann::json(*c.bianchi) : nlohmann::json(nullptr);
  j["petrov"] = c.petrov ? nlohmann::json(*c.petrov) : nlohmann::json(nullptr);
  j["ideal_type"] = r.ideal_type ? nlohmann::json(*r.ideal_type) : nlohmann::json(nullptr);
  j["ideal"] = r.ideal ? subspace_to_json(*r.ideal) : nlohmann::json(nullptr);
  j["njnf"] = r.njnf ? njnf_to_json(*r.njnf) : nlohmann::json(nullptr);
  j["witness"] = r.witness ? matrix_to_json(*r.witness) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json validation_to_json(const ValidationReport& rep) {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : rep.violations)
    vs.push_back({{"kind", v.kind == Violation::Kind::antisymmetry ? "antisymmetry" : "jacobi"},
                  {"indices", v.indices},
                  {"residual", vec_to_json(v.residual)},
                  {"message", v.describe()}});
  return {{"valid", rep.valid()}, {"violations", vs}};
}

inline nlohmann::json duality_to_json(const DualityVerdict& v) {
  nlohmann::json j = {{"selfdual", v.selfdual}, {"method", v.method}};
  j["witness"] = v.witness ? matrix_to_json(*v.witness) : nlohmann::json(nullptr);
  return j;
}

}  // namespace lieclass
