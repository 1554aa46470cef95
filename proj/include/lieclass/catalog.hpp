#pragma once

#include "algebraic.hpp"
#include "linexpr.hpp"
#include "structure_constants.hpp"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#ifndef LIECLASS_DATA_DIR
#define LIECLASS_DATA_DIR "data"
#endif

namespace lieclass {

struct UnknownClass : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Params = std::map<std::string, Q>;
using RParams = std::map<std::string, RealNum>;

struct ParamSpec {
  std::string name;
  std::optional<Q> min, max;
  bool min_open = false, max_open = false, nonzero = false;

  template <class F>
  std::optional<std::string> violation(const F& v) const {
    if (min && (min_open ? !(v > F(*min)) : v < F(*min)))
      return name + " must be " + (min_open ? "> " : ">= ") + min->get_str();
    if (max && (max_open ? !(v < F(*max)) : v > F(*max)))
      return name + " must be " + (max_open ? "< " : "<= ") + max->get_str();
    if (nonzero && sign(v) == 0) return name + " must be nonzero";
    return std::nullopt;
  }
  std::string range() const {
    std::string s;
    if (min || max) {
      s += min ? (min_open ? "(" : "[") + min->get_str() : "(-inf";
      s += ", ";
      s += max ? max->get_str() + (max_open ? ")" : "]") : "inf)";
    } else {
      s = "R";
    }
    if (nonzero) s += " \\ {0}";
    return s;
  }
};

struct TemplateEntry {
  int i, j, k;  // 1-based, i < j
  LinExpr c;
};

struct AlgebraClass {
  std::string id;
  std::size_t dim = 0;
  std::vector<ParamSpec> params;
  std::vector<Constraint> constraints;
  std::vector<TemplateEntry> brackets;
  std::optional<std::string> bianchi, petrov, ideal, njnf;
  std::vector<std::string> aliases;
  bool selfdual = true, decomposable = false;
  bool template_left = false;  /// template basis carries chirality L
  std::variant<bool, Constraint> unimodular = true;
  std::vector<Params> samples;

  template <class F>
  std::optional<std::string> parameter_violation(const std::map<std::string, F>& p) const {
    for (const auto& spec : params) {
      auto it = p.find(spec.name);
      if (it == p.end()) return "missing parameter " + spec.name;
      if (auto v = spec.violation(it->second)) return v;
    }
    for (const auto& [k, v] : p) {
      bool known = false;
      for (const auto& spec : params) known |= spec.name == k;
      if (!known) return "unknown parameter " + k;
    }
    for (const auto& c : constraints)
      if (!c.holds(p)) return "constraint " + c.text + " violated";
    return std::nullopt;
  }

  template <class F>
  bool unimodular_at(const std::map<std::string, F>& p) const {
    if (auto b = std::get_if<bool>(&unimodular)) return *b;
    return std::get<Constraint>(unimodular).holds(p);
  }

  /// "A_{3,1} (Bianchi II)" style label.
  std::string label() const {
    if (bianchi) return id + " (Bianchi " + *bianchi + ")";
    if (petrov) return id + " (Petrov " + *petrov + ")";
    return id;
  }
};

inline std::string default_data_path(const std::string& file, const char* env) {
  if (const char* e = std::getenv(env); e && *e) return e;
  return std::string(LIECLASS_DATA_DIR) + "/" + file;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": malformed JSON: " + e.what());
  }
}

class Catalog {
 public:
  static Catalog load(const std::string& path) { return from_json(read_json_file(path), path); }
  static const Catalog& bundled() {
    static const Catalog c = load(default_data_path("catalog.json", "LIECLASS_CATALOG"));
    return c;
  }

  static Catalog from_json(const nlohmann::json& j, const std::string& where = "catalog") {
    Catalog cat;
    try {
      for (const auto& r : j.at("classes")) cat.classes_.push_back(parse_class(r));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where + ": " + e.what());
    } catch (const ParseError& e) {
      throw DataError(where + ": " + e.what());
    }
    for (std::size_t i = 0; i < cat.classes_.size(); ++i) {
      const auto& c = cat.classes_[i];
      cat.index_[c.id] = i;
      for (const auto& a : c.aliases) cat.index_.emplace(a, i);
      if (c.bianchi) cat.index_.emplace(*c.bianchi, i);
      if (c.petrov) ++cat.petrov_count_[*c.petrov], cat.petrov_index_[*c.petrov] = i;
    }
    return cat;
  }

  const std::vector<AlgebraClass>& classes() const { return classes_; }

  const AlgebraClass* find(const std::string& name) const {
    if (auto it = index_.find(name); it != index_.end()) return &classes_[it->second];
    if (auto it = petrov_count_.find(name); it != petrov_count_.end() && it->second == 1)
      return &classes_[petrov_index_.at(name)];
    return nullptr;
  }
  const AlgebraClass& at(const std::string& name) const {
    if (auto c = find(name)) return *c;
    throw UnknownClass("unknown class '" + name + "'");
  }

  StructureConstants instantiate(const std::string& name, const Params& p = {}) const {
    const AlgebraClass& c = at(name);
    if (auto v = c.parameter_violation(p)) throw ParameterError(c.id + ": " + *v);
    std::vector<BracketEntry> es;
    for (const auto& t : c.brackets) es.push_back({t.i, t.j, t.k, t.c.eval(p)});
    return from_brackets(c.dim, es);
  }

  /// Problems found by instantiating every sample; empty when consistent.
  std::vector<std::string> self_test() const;

 private:
  static AlgebraClass parse_class(const nlohmann::json& r) {
    AlgebraClass c;
    c.id = r.at("id").get<std::string>();
    c.dim = r.at("dim").get<std::size_t>();
    for (const auto& p : r.value("params", nlohmann::json::array())) {
      ParamSpec s;
      s.name = p.at("name").get<std::string>();
      if (p.contains("min")) s.min = parse_rational(p["min"].get<std::string>());
      if (p.contains("max")) s.max = parse_rational(p["max"].get<std::string>());
      s.min_open = p.value("min_open", false);
      s.max_open = p.value("max_open", false);
      s.nonzero = p.value("nonzero", false);
      c.params.push_back(s);
    }
    for (const auto& s : r.value("constraints", nlohmann::json::array()))
      c.constraints.push_back(parse_constraint(s.get<std::string>()));
    for (const auto& b : r.at("brackets")) {
      TemplateEntry t{b.at("i").get<int>(), b.at("j").get<int>(), b.at("k").get<int>(),
                      parse_linexpr(b.at("c").get<std::string>())};
      if (t.i >= t.j) throw DataError(c.id + ": bracket entries need i < j");
      c.brackets.push_back(t);
    }
    auto opt = [&](const char* key) -> std::optional<std::string> {
      if (r.contains(key) && r[key].is_string()) return r[key].get<std::string>();
      return std::nullopt;
    };
    c.bianchi = opt("bianchi");
    c.petrov = opt("petrov");
    c.ideal = opt("ideal");
    c.njnf = opt("njnf");
    for (const auto& a : r.value("aliases", nlohmann::json::array())) c.aliases.push_back(a.get<std::string>());
    c.selfdual = r.at("selfdual").get<bool>();
    c.decomposable = r.value("decomposable", false);
    c.template_left = r.value("template_chirality", std::string("R")) == "L";
    const auto& u = r.at("unimodular_when");
    if (u.is_boolean()) c.unimodular = u.get<bool>();
    else c.unimodular = parse_constraint(u.get<std::string>());
    for (const auto& s : r.value("samples", nlohmann::json::array({nlohmann::json::object()}))) {
      Params p;
      for (const auto& [k, v] : s.items()) p[k] = parse_rational(v.get<std::string>());
      c.samples.push_back(p);
    }
    return c;
  }

  std::vector<AlgebraClass> classes_;
  std::map<std::string, std::size_t> index_, petrov_index_;
  std::map<std::string, int> petrov_count_;
};

inline std::vector<std::string> Catalog::self_test() const {
  std::vector<std::string> out;
  for (const auto& c : classes_)
    for (const auto& p : c.samples) {
      try {
        if (!validate(instantiate(c.id, p)).valid()) out.push_back(c.id + ": sample violates the Lie axioms");
      } catch (const std::exception& e) {
        out.push_back(c.id + ": " + e.what());
      }
    }
  return out;
}

/// Parameter identifications inside a class: A^{a,b}_{4,5} is symmetric in
/// (a, b) and A^{-1,b} = A^{-1,-b}; A^{a,0}_{4,6} = A^{-a,0}_{4,6}.
template <class F>
void canonicalize_params(const std::string& id, std::map<std::string, F>& p) {
  if (id == "A_{4,5}" && p.count("a") && p.count("b")) {
    if (p["a"] > p["b"]) std::swap(p["a"], p["b"]);
    if (p["a"] == F(-1) && sign(p["b"]) < 0) p["b"] = -p["b"];
    if (p["a"] > p["b"]) std::swap(p["a"], p["b"]);
  }
  if (id == "A_{4,6}" && p.count("a") && p.count("b")) {
    if (sign(p["b"]) == 0 && sign(p["a"]) < 0) p["a"] = -p["a"];
  }
}

inline RParams to_real(const Params& p) {
  RParams r;
  for (const auto& [k, v] : p) r[k] = RealNum(v);
  return r;
}

// --------------------------------------------------------------- families

namespace family {

namespace detail {
/// Adds [e_n, e_i] = c e_k (1-based) to sc.
inline void put(StructureConstants& sc, std::size_t n, std::size_t i, std::size_t k, const Q& c) {
  sc.set(n - 1, i - 1, k - 1, sc.at(n - 1, i - 1, k - 1) + c);
}

/// ii chains acting on e_{off+1} .. e_{off+len-1} with generator e_n.
inline void ii_chains(StructureConstants& sc, std::size_t n, std::size_t off, std::size_t len) {
  if (len % 2 == 1) {
    for (std::size_t i = 1; 2 * i < len; ++i) put(sc, n, off + 2 * i, off + 2 * i - 1, 1);
  } else {
    put(sc, n, off + 2, off + 1, 1);
    put(sc, n, off + 3, off + 2, 1);
    for (std::size_t i = 1; 2 * i + 3 < len; ++i) put(sc, n, off + 2 * i + 3, off + 2 * i + 2, 1);
  }
}
}  // namespace detail

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ParameterError(msg);
}

/// V^(n): [e_n, e_i] = e_i.
inline StructureConstants ve(std::size_t n) {
  require(n >= 2, "ve(n) needs n >= 2");
  StructureConstants sc(n);
  for (std::size_t i = 1; i < n; ++i) detail::put(sc, n, i, i, 1);
  return sc;
}

/// II^(n) = II + R^(n-3).
inline StructureConstants heisenberg(std::size_t n) {
  require(n >= 3, "II(n) needs n >= 3");
  StructureConstants sc(n);
  detail::put(sc, n, n - 1, n - 2, 1);
  return sc;
}

/// IV^(n): identity on e_1..e_{n-2} plus [e_n, e_{n-1}] = e_{n-2} + e_{n-1}.
inline StructureConstants iv_n(std::size_t n) {
  require(n >= 3, "IV(n) needs n >= 3");
  StructureConstants sc(n);
  for (std::size_t i = 1; i + 1 < n; ++i) detail::put(sc, n, i, i, 1);
  detail::put(sc, n, n - 1, n - 2, 1);
  detail::put(sc, n, n - 1, n - 1, 1);
  return sc;
}

/// Nilpotent atom ii(n).
inline StructureConstants ii(std::size_t n) {
  require(n >= 3, "ii(n) needs n >= 3");
  StructureConstants sc(n);
  detail::ii_chains(sc, n, 0, n);
  return sc;
}

/// ii(n) chains shifted to eigenvalue 1.
inline StructureConstants iv(std::size_t n) {
  StructureConstants sc = ii(n);
  for (std::size_t i = 1; i < n; ++i) detail::put(sc, n, i, i, 1);
  return sc;
}

inline std::pair<std::size_t, std::size_t> a_m_range(std::size_t n) {
  return {2 + (n - 4) / 3, n - 3};
}

/// a_m(n): identity on e_1..e_m, ii(n-m) chains on the rest.
inline StructureConstants a_m(std::size_t n, std::size_t m) {
  require(n >= 5, "a_m(n) needs n >= 5");
  auto [lo, hi] = a_m_range(n);
  require(m >= lo && m <= hi, "a_m(n): m must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "] for n = " +
                                  std::to_string(n));
  StructureConstants sc(n);
  for (std::size_t i = 1; i <= m; ++i) detail::put(sc, n, i, i, 1);
  detail::ii_chains(sc, n, m, n - m);
  return sc;
}

/// A^a_{n,2}: a on e_1 and iv(n-1) on e_2..e_{n-1}.
inline StructureConstants a_n2(std::size_t n, const Q& a) {
  require(n >= 4, "A^a_{n,2} needs n >= 4");
  require(sgn(a) != 0, "A^a_{n,2} needs a != 0");
  StructureConstants sc(n);
  detail::put(sc, n, 1, 1, a);
  detail::ii_chains(sc, n, 1, n - 1);
  for (std::size_t i = 2; i < n; ++i) detail::put(sc, n, i, i, 1);
  return sc;
}

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> v{"ve", "II", "IV", "ii", "iv", "a_m", "A2"};
  return v;
}

/// Dispatch by CLI name; m is used by a_m, a by A2.
inline StructureConstants make(const std::string& name, std::size_t n, std::optional<std::size_t> m = {},
                               std::optional<Q> a = {}) {
  if (name == "ve") return ve(n);
  if (name == "II") return heisenberg(n);
  if (name == "IV") return iv_n(n);
  if (name == "ii") return ii(n);
  if (name == "iv") return iv(n);
  if (name == "a_m") {
    require(m.has_value(), "a_m needs m");
    return a_m(n, *m);
  }
  if (name == "A2") {
    require(a.has_value(), "A2 family needs a");
    return a_n2(n, *a);
  }
  throw UnknownClass("unknown family '" + name + "'");
}

}  // namespace family

}  // namespace lieclass
