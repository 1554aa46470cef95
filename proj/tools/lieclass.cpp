#include <lieclass/json_io.hpp>
#include <lieclass/transitions.hpp>

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace lieclass;
using nlohmann::json;

namespace {

/// Usage errors surface as exit 2, everything domain-related as exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format;
  bool approx = false;
  std::string catalog;

  std::string input, inline_json, class_id;
  std::vector<std::string> params;

  std::string family_spec, basis, path;
  std::string ideal;

  int graph_dim = 0;
  bool oriented = false;
  std::string atoms, space_dim;
  std::vector<std::string> pair;
  bool check = false;

  std::string family_name;
  std::size_t n = 0, m = 0;
  std::string a;
};

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_input_text(const std::string& path) {
  if (path == "-") return read_all(std::cin);
  std::ifstream in(path);
  if (!in) throw DataError("cannot read input file '" + path + "'");
  return read_all(in);
}

Params parse_params(const std::vector<std::string>& items) {
  Params p;
  for (const auto& it : items) {
    auto eq = it.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + it + "'");
    p[it.substr(0, eq)] = parse_rational(it.substr(eq + 1));
  }
  return p;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string params_text(const RParams& p, bool approx) {
  std::string s;
  for (const auto& [k, v] : p) {
    if (!s.empty()) s += ", ";
    s += k + "=" + v.str();
    if (approx && !v.is_rational()) s += " ~ " + std::to_string(v.approx());
  }
  return s;
}

std::string matrix_text(const QMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).get_str();
    s += "]";
  }
  return s + "]";
}

std::string vec_text(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

std::string brackets_text(const StructureConstants& sc) {
  std::ostringstream o;
  std::size_t n = sc.dim();
  bool any = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::string rhs;
      for (std::size_t k = 0; k < n; ++k) {
        const Q& c = sc.at(i, j, k);
        if (sgn(c) == 0) continue;
        std::string cs = c.get_str();
        if (!rhs.empty()) rhs += sgn(c) > 0 ? " + " : " - ";
        else if (sgn(c) < 0) rhs += "-";
        if (sgn(c) < 0) cs = cs.substr(1);
        rhs += (cs == "1" ? "" : cs + "*") + "e" + std::to_string(k + 1);
      }
      if (rhs.empty()) continue;
      o << "[e" << i + 1 << ", e" << j + 1 << "] = " << rhs << "\n";
      any = true;
    }
  if (!any) o << "(abelian)\n";
  return o.str();
}

class App {
 public:
  explicit App(Options o) : o_(std::move(o)) {
    if (!o_.catalog.empty()) owned_ = std::make_unique<Catalog>(Catalog::load(o_.catalog));
    cat_ = owned_ ? owned_.get() : &Catalog::bundled();
    cl_ = std::make_unique<Classifier>(*cat_);
  }

  std::string fmt(const std::string& dflt, std::initializer_list<const char*> allowed) const {
    std::string f = o_.format.empty() ? dflt : o_.format;
    for (const char* a : allowed)
      if (f == a) return f;
    throw UsageError("format '" + f + "' is not available for this command");
  }

  StructureConstants algebra() const {
    int sources = !o_.input.empty() + !o_.inline_json.empty() + !o_.class_id.empty();
    if (sources == 0) throw UsageError("no input: give a file (or - for stdin), --json TEXT or --class ID");
    if (sources > 1) throw UsageError("give exactly one of: input file, --json, --class");
    if (!o_.class_id.empty()) return cat_->instantiate(o_.class_id, class_params());
    return parse_algebra(o_.input.empty() ? o_.inline_json : read_input_text(o_.input));
  }

  /// --param values, brought into the class's canonical order first.
  Params class_params() const {
    Params p = parse_params(o_.params);
    canonicalize_params(cat_->at(o_.class_id).id, p);
    return p;
  }

  int validate() {
    std::string f = fmt("text", {"text", "json"});
    StructureConstants sc = algebra();
    ValidationReport rep = lieclass::validate(sc);
    std::optional<ClassificationResult> r;
    if (rep.valid() && sc.dim() <= 4) r = cl_->classify(sc);
    if (f == "json") {
      json j = validation_to_json(rep);
      j["dim"] = sc.dim();
      j["class"] = r ? json(r->class_id) : json(nullptr);
      std::cout << j.dump(2) << "\n";
    } else if (rep.valid()) {
      std::cout << "valid" << (r ? " (" + r->class_id + ")" : std::string()) << "\n";
    } else {
      std::cout << "invalid: " << rep.violations.size() << " violation" << (rep.violations.size() == 1 ? "" : "s") << "\n";
      for (const auto& v : rep.violations) std::cout << "  " << v.describe() << "\n";
    }
    return rep.valid() ? 0 : 1;
  }

  int classify() {
    std::string f = fmt("text", {"text", "json"});
    StructureConstants sc = algebra();
    ClassificationResult r = cl_->classify(sc);
    const AlgebraClass& c = cat_->at(r.class_id);
    std::optional<Chirality> ch;
    if (!c.selfdual) ch = cl_->chirality(sc);
    if (f == "json") {
      json j = classification_to_json(r, *cat_);
      j["chirality"] = ch ? json(chirality_name(*ch)) : json(nullptr);
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    std::cout << c.label();
    if (!r.params.empty()) std::cout << ", " << params_text(r.params, o_.approx);
    std::cout << ", selfdual: " << yesno(c.selfdual) << ", unimodular: " << yesno(r.signature.unimodular) << "\n";
    return 0;
  }

  int invariants() {
    std::string f = fmt("text", {"text", "json"});
    StructureConstants sc = algebra();
    auto rep = lieclass::validate(sc);
    if (!rep.valid()) throw InvalidAlgebra("input violates the Lie axioms: " + rep.violations.front().describe());
    InvariantSignature s = invariant_signature(sc);
    SeriesProfile sp = series_profile(sc);
    Codim1Ideals ideals = codim1_ideals(sc);
    Subspace rad = radical(sc);
    DirectSum ds = decompose_direct_sum(sc);
    std::optional<TraceDecomposition> td;
    if (sc.dim() >= 2) td = trace_decompose(sc);
    std::optional<BehrForm> behr;
    if (sc.dim() == 3) behr = behr_form(sc);
    if (f == "json") {
      json j = signature_to_json(s);
      j["nilpotency_degree"] = sp.nilpotency_degree ? json(*sp.nilpotency_degree) : json(nullptr);
      j["solvability_degree"] = sp.solvability_degree ? json(*sp.solvability_degree) : json(nullptr);
      j["codim1_ideals"] = json::array();
      for (const auto& h : ideals.ideals)
        j["codim1_ideals"].push_back({{"type", ideal_type_name(h.type)}, {"basis", subspace_to_json(h.space)}});
      j["codim1_non_unique"] = ideals.non_unique;
      j["radical"] = subspace_to_json(rad);
      j["essential_dimension"] = ds.essential_dimension;
      j["factors"] = json::array();
      for (std::size_t i = 0; i < ds.factors.size(); ++i) {
        json b = json::array();
        for (const auto& v : ds.factor_bases[i]) b.push_back(vec_to_json(v));
        j["factors"].push_back({{"basis", b}, {"algebra", algebra_to_json(ds.factors[i])}});
      }
      j["trace_vector"] = td ? vec_to_json(td->vector) : json(nullptr);
      if (behr) j["behr_form"] = {{"n", matrix_to_json(behr->n)}, {"a", vec_to_json(behr->a)}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    auto dims = [](const std::vector<std::size_t>& v) {
      std::string t;
      for (auto d : v) t += (t.empty() ? "" : " ") + std::to_string(d);
      return t;
    };
    std::cout << "dim: " << s.dim << "\n"
              << "derived dim: " << s.derived_dim << "\n"
              << "center dim: " << s.center_dim << "\n"
              << "unimodular: " << yesno(s.unimodular) << "\n"
              << "nilpotent: " << yesno(s.nilpotent);
    if (sp.nilpotency_degree) std::cout << " (degree " << *sp.nilpotency_degree << ")";
    std::cout << "\nsolvable: " << yesno(s.solvable);
    if (sp.solvability_degree) std::cout << " (degree " << *sp.solvability_degree << ")";
    std::cout << "\ncentral series: " << dims(s.central_dims) << "\n"
              << "derived series: " << dims(s.derived_dims) << "\n"
              << "killing signature: (" << s.killing.pos << ", " << s.killing.neg << ", " << s.killing.zero << ")\n";
    if (behr)
      std::cout << "behr: n = " << matrix_text(behr->n) << ", a = " << vec_text(behr->a) << "\n";
    std::cout << "codim-1 ideals:";
    if (ideals.ideals.empty()) std::cout << " none";
    for (const auto& h : ideals.ideals) {
      std::cout << " " << ideal_type_name(h.type) << " span{";
      for (std::size_t i = 0; i < h.space.basis().size(); ++i) std::cout << (i ? ", " : "") << vec_text(h.space.basis()[i]);
      std::cout << "}";
    }
    if (ideals.non_unique) std::cout << " (representative; not unique)";
    std::cout << "\nradical dim: " << rad.dim() << "\n"
              << "essential dimension: " << ds.essential_dimension << "\n";
    if (td) std::cout << "trace vector: " << vec_text(td->vector) << "\n";
    return 0;
  }

  int njnf() {
    std::string f = fmt("text", {"text", "json"});
    StructureConstants sc = algebra();
    auto rep = lieclass::validate(sc);
    if (!rep.valid()) throw InvalidAlgebra("input violates the Lie axioms: " + rep.violations.front().describe());
    std::vector<IdealType> order{IdealType::abelian, IdealType::heisenberg, IdealType::vtype};
    if (!o_.ideal.empty()) {
      if (o_.ideal == "I") order = {IdealType::abelian};
      else if (o_.ideal == "II") order = {IdealType::heisenberg};
      else if (o_.ideal == "V") order = {IdealType::vtype};
      else throw UsageError("--ideal must be I, II or V");
    }
    for (IdealType t : order) {
      auto pos = ideal_in_position(sc, t);
      if (!pos) continue;
      QMatrix m = restricted_adjoint(sc, pos->first, pos->second);
      NJNF nf = normalize(real_jordan_form(m));
      if (f == "json") {
        json j = {{"ideal_type", ideal_type_name(t)},
                  {"ideal", subspace_to_json(pos->first)},
                  {"complement", vec_to_json(pos->second)},
                  {"restricted_adjoint", matrix_to_json(m)},
                  {"njnf", njnf_to_json(nf)}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "ideal: " << ideal_type_name(t) << "\n"
                  << "restricted adjoint: " << matrix_text(m) << "\n"
                  << "NJNF: " << njnf_text(nf, o_.approx) << "\n";
      }
      return 0;
    }
    throw InvalidAlgebra("no codimension-1 ideal of the requested type");
  }

  int dual() {
    std::string f = fmt("text", {"text", "json"});
    StructureConstants sc = algebra();
    DualityVerdict v = duality_verdict(sc, *cl_);
    std::optional<Chirality> ch;
    if (!v.selfdual) ch = cl_->chirality(sc);
    if (f == "json") {
      json j = duality_to_json(v);
      j["chirality"] = ch ? json(chirality_name(*ch)) : json(nullptr);
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    std::cout << "selfdual: " << yesno(v.selfdual);
    if (v.selfdual) std::cout << " (" << v.method << ")";
    if (ch) std::cout << ", chirality: " << chirality_name(*ch);
    std::cout << "\n";
    if (v.witness) std::cout << "witness: " << matrix_text(*v.witness) << "\n";
    return 0;
  }

  int contract() {
    std::string f = fmt("text", {"text", "json"});
    if (o_.family_spec.empty()) throw UsageError("contract needs --family SPEC");
    std::optional<QMatrix> basis;
    if (!o_.basis.empty()) {
      json b;
      try {
        b = json::parse(o_.basis);
      } catch (const json::exception& e) {
        throw ParseError(std::string("--basis: malformed JSON: ") + e.what());
      }
      basis = parse_qmatrix(b, "--basis");
    }
    std::optional<TransitionCheck> chk;
    std::optional<StructureConstants> lim;
    std::optional<ContractionFamily> fam;
    if (!o_.path.empty()) {
      if (o_.class_id.empty()) throw UsageError("--path needs --class");
      const AlgebraClass& c = cat_->at(o_.class_id);
      PathParams p = constant_path(class_params());
      for (const auto& [k, v] : parse_path(o_.path)) p[k] = v;
      fam = parse_contraction_spec(o_.family_spec, c.dim, basis);
      chk = verify_transition_witness(c.id, p, *fam, *cl_);
      lim = chk->limit_constants;
    } else {
      StructureConstants sc = algebra();
      auto rep = lieclass::validate(sc);
      if (!rep.valid()) throw InvalidAlgebra("input violates the Lie axioms: " + rep.violations.front().describe());
      fam = parse_contraction_spec(o_.family_spec, sc.dim(), basis);
      lim = contract_limit(sc, *fam);
      if (!lim) throw ContractionError("limit does not exist: some C^k_ij(t) has a pole at t = 0");
      if (sc.dim() <= 4) {
        TransitionCheck t;
        t.source = cl_->classify(sc);
        t.source_constants = sc;
        t.limit = cl_->classify(*lim);
        t.limit_constants = *lim;
        t.improper = t.limit.same_class(t.source);
        t.abelian = lim->zero();
        chk = t;
      }
    }
    if (f == "json") {
      json j = {{"family", family_to_json(*fam)}, {"limit", algebra_to_json(*lim)}, {"abelian", lim->zero()}};
      j["source"] = chk ? classification_to_json(chk->source, *cat_) : json(nullptr);
      j["classification"] = chk ? classification_to_json(chk->limit, *cat_) : json(nullptr);
      j["improper"] = chk ? json(chk->improper) : json(nullptr);
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (chk) {
      const AlgebraClass& lc = cat_->at(chk->limit.class_id);
      std::cout << "limit: " << lc.label();
      if (!chk->limit.params.empty()) std::cout << ", " << params_text(chk->limit.params, o_.approx);
      std::cout << "\nimproper: " << yesno(chk->improper) << "\n";
    }
    std::cout << brackets_text(*lim);
    return 0;
  }

  int graph() {
    std::string f = fmt("text", {"text", "json", "dot"});
    if (o_.graph_dim != 3 && o_.graph_dim != 4) throw UsageError("graph needs --dim 3 or --dim 4");
    TransitionGraph g = TransitionGraph::build(o_.graph_dim, o_.oriented, *cat_);
    std::string name = "K" + std::to_string(g.dim()) + (g.oriented() ? "_or" : "");
    if (!o_.atoms.empty()) {
      auto a = g.atoms(parse_filter(o_.atoms));
      if (f == "json") std::cout << json(a).dump() << "\n";
      else
        for (const auto& x : a) std::cout << x << "\n";
      return 0;
    }
    if (!o_.space_dim.empty()) {
      std::size_t d = g.space_dimension(parse_filter(o_.space_dim));
      if (f == "json") std::cout << json(d).dump() << "\n";
      else std::cout << d << "\n";
      return 0;
    }
    if (!o_.pair.empty()) {
      TwoPoint tp = g.two_point_topology(o_.pair.at(0), o_.pair.at(1));
      std::string d = tp.describe(o_.pair[0], o_.pair[1]);
      if (f == "json")
        std::cout << json{{"a", o_.pair[0]}, {"b", o_.pair[1]}, {"a_to_b", tp.a_to_b}, {"b_to_a", tp.b_to_a}, {"topology", d}}.dump(2)
                  << "\n";
      else std::cout << d << "\n";
      return 0;
    }
    if (o_.check) {
      std::size_t ok = 0, bad = 0, unwitnessed = 0;
      json rows = json::array();
      for (const auto& e : g.base_edges()) {
        if (!e.witness) {
          ++unwitnessed;
          continue;
        }
        std::string status;
        try {
          EdgeCheck c = g.check_witness(e, *cl_);
          status = c.ok ? "ok" : "mismatch (got " + c.located.value_or(c.check.limit.class_id) + ")";
          (c.ok ? ok : bad)++;
        } catch (const std::exception& ex) {
          status = std::string("error: ") + ex.what();
          ++bad;
        }
        rows.push_back({{"from", e.from}, {"to", e.to}, {"status", status}});
        if (f == "text") std::cout << e.from << " -> " << e.to << ": " << status << "\n";
      }
      if (f == "json")
        std::cout << json{{"checked", ok + bad}, {"ok", ok}, {"failed", bad}, {"unwitnessed", unwitnessed}, {"edges", rows}}.dump(2)
                  << "\n";
      else std::cout << ok << " ok, " << bad << " failed, " << unwitnessed << " unwitnessed\n";
      return bad == 0 ? 0 : 1;
    }
    if (f == "dot") std::cout << g.to_dot();
    else if (f == "json") std::cout << g.to_json().dump(2) << "\n";
    else {
      std::cout << name << ": " << g.nodes().size() << " nodes, " << g.edges().size() << " edges\n";
      for (const auto& e : g.edges()) {
        std::cout << e.from << " -> " << e.to << " [" << e.kind;
        if (e.closure) std::cout << ", closure";
        std::cout << "]\n";
      }
    }
    return 0;
  }

  int family() {
    std::string f = fmt("json", {"text", "json"});
    std::optional<std::size_t> m;
    std::optional<Q> a;
    if (o_.m) m = o_.m;
    if (!o_.a.empty()) a = parse_rational(o_.a);
    StructureConstants sc = family::make(o_.family_name, o_.n, m, a);
    if (f == "json") std::cout << algebra_to_json(sc).dump(2) << "\n";
    else std::cout << brackets_text(sc);
    return 0;
  }

 private:
  Options o_;
  std::unique_ptr<Catalog> owned_;
  const Catalog* cat_ = nullptr;
  std::unique_ptr<Classifier> cl_;
};

void add_input(CLI::App* sub, Options& o) {
  sub->add_option("input", o.input, "structure-constant JSON file, - for stdin");
  sub->add_option("--json", o.inline_json, "inline structure-constant JSON");
  sub->add_option("--class", o.class_id, "instantiate a catalog class instead");
  sub->add_option("--param", o.params, "class parameter name=value (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify real Lie algebras of dimension <= 4 and explore their transition networks"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("LIECLASS_CATALOG"); env && *env) o.catalog = env;
  app.add_option("--format", o.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_flag("--approx", o.approx, "append floating approximations to irrational numbers");
  app.add_option("--catalog", o.catalog, "catalog JSON file (default: bundled, or LIECLASS_CATALOG)");
  app.fallthrough();

  auto* v = app.add_subcommand("validate", "check antisymmetry and the Jacobi identity");
  add_input(v, o);
  auto* c = app.add_subcommand("classify", "catalog class and canonical parameters");
  add_input(c, o);
  auto* inv = app.add_subcommand("invariants", "series, Killing signature, ideals, decomposition");
  add_input(inv, o);
  auto* nj = app.add_subcommand("njnf", "normalized Jordan form over a codimension-1 ideal");
  add_input(nj, o);
  nj->add_option("--ideal", o.ideal, "ideal type I, II or V (default: first available)");
  auto* d = app.add_subcommand("dual", "selfduality verdict with witness, or chirality");
  add_input(d, o);
  auto* ct = app.add_subcommand("contract", "limit t -> 0 of a contraction family");
  add_input(ct, o);
  ct->add_option("--family", o.family_spec, "iw:m, trivial, or a JSON matrix/object in t")->required();
  ct->add_option("--basis", o.basis, "JSON matrix of the IW basis (rows)");
  ct->add_option("--path", o.path, "parameter path such as b=-1+t (with --class)");
  auto* g = app.add_subcommand("graph", "transition network of K3 or K4");
  g->add_option("--dim", o.graph_dim, "3 or 4")->required()->check(CLI::IsMember({3, 4}));
  g->add_flag("--oriented", o.oriented, "split non-selfdual nodes into R and L copies");
  g->add_option("--atoms", o.atoms, "print atoms of a subset: all, de, nsd, unimodular");
  g->add_option("--space-dim", o.space_dim, "print the dimension of a subset");
  g->add_option("--pair", o.pair, "two node ids: induced two-point topology")->expected(2);
  g->add_flag("--check", o.check, "re-verify every stored witness family");
  auto* fm = app.add_subcommand("family", "arbitrary-n generators: ve, II, IV, ii, iv, a_m, A2");
  fm->add_option("name", o.family_name, "family name")->required();
  fm->add_option("-n,--n", o.n, "dimension")->required();
  fm->add_option("-m,--m", o.m, "split size for a_m");
  fm->add_option("-a,--a", o.a, "parameter for A2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    App runner(o);
    if (*v) return runner.validate();
    if (*c) return runner.classify();
    if (*inv) return runner.invariants();
    if (*nj) return runner.njnf();
    if (*d) return runner.dual();
    if (*ct) return runner.contract();
    if (*g) return runner.graph();
    if (*fm) return runner.family();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
