#include <catch_amalgamated.hpp>

#include "support.hpp"

#include <lieclass/transitions.hpp>

using namespace lieclass;
using namespace testing_support;

namespace {
const Catalog& cat() { return Catalog::bundled(); }

const TransitionGraph& graph(int dim, bool oriented) {
  static const TransitionGraph k3 = TransitionGraph::build(3, false), k3o = TransitionGraph::build(3, true),
                               k4 = TransitionGraph::build(4, false), k4o = TransitionGraph::build(4, true);
  if (dim == 3) return oriented ? k3o : k3;
  return oriented ? k4o : k4;
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }
}  // namespace

TEST_CASE("contraction limits agree with sympy") {
  auto ix = contract_limit(cat().instantiate("A_{3,9}"), ContractionFamily::iw(3, 1));
  REQUIRE(ix);
  CHECK(*ix == tensor_of(3, oracle_limit_ix_iw1));

  QMatrix u = QMatrix::from_rows({{0, 0, 0}, {1, 0, 0}, {0, 0, 1}});
  auto sal = ContractionFamily::saletan(u, QMatrix::identity(3));
  auto first = contract_limit(cat().instantiate("A_{3,8}"), sal);
  REQUIRE(first);
  CHECK(*first == tensor_of(3, oracle_limit_viii_saletan1));
  auto second = contract_limit(*first, sal);
  REQUIRE(second);
  CHECK(*second == tensor_of(3, oracle_limit_viii_saletan2));

  auto a49 = contract_limit(instantiate_path(cat().at("A_{4,9}"), parse_path("b=-1+t/2")),
                            ContractionFamily::general(RatMatrix::identity(4)));
  REQUIRE(a49);
  CHECK(*a49 == tensor_of(4, oracle_limit_a49_path));
  auto a411 = contract_limit(instantiate_path(cat().at("A_{4,11}"), parse_path("a=t")),
                             ContractionFamily::general(RatMatrix::identity(4)));
  REQUIRE(a411);
  CHECK(*a411 == tensor_of(4, oracle_limit_a411_path));

  auto h = contract_limit(cat().instantiate("A_1+A_{3,1}"), ContractionFamily::iw(4, 2));
  REQUIRE(h);
  CHECK(*h == tensor_of(4, oracle_limit_ii4_iw2));
}

TEST_CASE("divergent families have no limit") {
  // shrinking only the derived direction blows the bracket up
  RatMatrix a = RatMatrix::identity(3);
  a(0, 0) = RatFunc::t();
  CHECK_FALSE(contract_limit(cat().instantiate("A_{3,1}"), ContractionFamily::general(a)));
}

TEST_CASE("verified transitions classify source and limit") {
  Classifier cl;
  auto r = verify_transition_witness("A_{3,9}", Params{}, ContractionFamily::iw(3, 1), cl);
  CHECK(r.source.class_id == "A_{3,9}");
  CHECK(r.limit.class_id == "A_{3,6}");
  CHECK_FALSE(r.improper);
  CHECK_FALSE(r.abelian);
  auto t = verify_transition_witness("A_{3,9}", Params{}, ContractionFamily::trivial(3), cl);
  CHECK(t.abelian);
  CHECK(t.limit.class_id == "3A_1");
}

TEST_CASE("contraction family and path parsing") {
  auto f = parse_contraction_spec("iw:1", 3);
  CHECK(f.kind() == ContractionFamily::Kind::iw);
  CHECK(f.split() == 1);
  CHECK(f.at(Q(1, 2)) == QMatrix::from_rows({{1, 0, 0}, {0, Q(1, 2), 0}, {0, 0, Q(1, 2)}}));
  CHECK(parse_contraction_spec("trivial", 2).kind() == ContractionFamily::Kind::trivial);
  auto g = parse_contraction_spec(R"([["1","0"],["0","t^2"]])", 2);
  CHECK(g.kind() == ContractionFamily::Kind::general);
  CHECK(g.at(Q(1, 2))(1, 1) == Q(1, 4));
  CHECK_THROWS_AS(parse_contraction_spec("iw:x", 3), ParseError);
  CHECK_THROWS_AS(parse_contraction_spec("iw:3", 3), ContractionError);
  CHECK_THROWS_AS(parse_contraction_spec("[[1,", 2), ParseError);
  CHECK_THROWS_AS(parse_contraction_spec(R"([["1","0"],["0","t"]])", 3), ContractionError);
  // singular for every t
  CHECK_THROWS_AS(parse_contraction_spec(R"([["t","0"],["0","0"]])", 2), ContractionError);
  CHECK_THROWS_AS(ContractionFamily::saletan(QMatrix::identity(2), QMatrix::identity(2)), ContractionError);

  PathParams p = parse_path("b=-1+t, a=1/2");
  REQUIRE(p.size() == 2);
  CHECK(*p.at("b").eval(Q(1, 2)) == Q(-1, 2));
  CHECK(*p.at("a").eval(Q(0)) == Q(1, 2));
  CHECK_THROWS_AS(parse_path("b"), ParseError);
  CHECK_THROWS_AS(parse_path("=1"), ParseError);
}

TEST_CASE("extended families act trivially on the added direction") {
  auto f = ContractionFamily::iw(3, 1).extended();
  CHECK(f.dim() == 4);
  CHECK(f.split() == 2);
  auto lim = contract_limit(cat().instantiate("A_1+A_{3,9}"), f);
  REQUIRE(lim);
  Classifier cl;
  CHECK(cl.classify(*lim).class_id == "A_1+A_{3,6}");
}

TEST_CASE("graphs are transitively closed and every witness replays") {
  Classifier cl;
  for (int d : {3, 4})
    for (bool o : {false, true}) {
      const auto& g = graph(d, o);
      INFO("K" << d << (o ? " oriented" : ""));
      for (const auto& e : g.edges()) {
        CHECK(e.from != e.to);
        for (const auto& f : g.successors(e.to))
          if (f != e.from) CHECK(g.has_edge(e.from, f));
      }
      std::size_t witnessed = 0;
      for (const auto& e : g.edges()) {
        if (!e.witness) continue;
        ++witnessed;
        INFO(e.from << " -> " << e.to);
        CHECK(g.check_witness(e, cl).ok);
      }
      CHECK(witnessed > 0);
      // every non-abelian node contracts to the abelian one
      for (const auto& v : g.nodes()) {
        INFO(v.id);
        if (v.abelian)
          CHECK(g.successors(v.id).empty());
        else
          CHECK(g.has_edge(v.id, d == 3 ? "I" : "4A_1"));
      }
    }
}

TEST_CASE("known edges of the dimension 3 graph") {
  const auto& g = graph(3, false);
  CHECK(g.nodes().size() == 11);
  CHECK(g.has_edge("IX", "VII_0"));
  CHECK(g.has_edge("VIII", "VII_0"));
  CHECK(g.has_edge("VIII", "II"));
  CHECK_FALSE(g.has_edge("IX", "VI_0"));
  CHECK_FALSE(g.has_edge("II", "IX"));
  CHECK_FALSE(g.has_edge("V", "II"));
  CHECK(g.in_degree("IX") == 0);
}

TEST_CASE("2A_2 is not the limit of anything") {
  CHECK(graph(4, false).in_degree("2A_2") == 0);
  CHECK(graph(4, true).in_degree("2A_2") == 0);
}

TEST_CASE("oriented graphs never join conjugate points") {
  for (int d : {3, 4}) {
    const auto& g = graph(d, true);
    for (const auto& v : g.nodes()) {
      if (v.chirality.empty()) continue;
      INFO(v.id);
      CHECK_FALSE(g.reachable(v.id, flip_chirality(v.id)));
    }
    // direct edges between chiral nodes keep the chirality; mixing only happens through selfdual nodes
    for (const auto& e : g.edges()) {
      if (e.closure) continue;
      const auto& a = g.node(e.from);
      const auto& b = g.node(e.to);
      INFO(e.from << " -> " << e.to);
      if (!a.chirality.empty() && !b.chirality.empty()) CHECK(a.chirality == b.chirality);
    }
  }
  CHECK(graph(3, true).nodes().size() == 17);
  CHECK(graph(3, true).has_edge("IX^R", "VII_0^R"));
  CHECK_FALSE(graph(3, true).has_edge("IX^R", "VII_0^L"));
  CHECK(graph(4, true).has_edge("A_{4,9}[0<b<1]^R", "A_{4,7}^R"));
  CHECK_FALSE(graph(4, true).has_edge("A_{4,12}^R", "A_{4,9}[b=0]^L"));
}

TEST_CASE("atoms and space dimensions") {
  const auto& k3 = graph(3, false);
  CHECK(as_set(k3.atoms(NodeFilter::all)) == std::set<std::string>{"II", "V"});
  CHECK(as_set(k3.atoms(NodeFilter::nsd)) == std::set<std::string>{"II"});
  CHECK(k3.space_dimension(NodeFilter::all) == 1);
  CHECK(k3.space_dimension(NodeFilter::unimodular) == 0);

  const auto& k4 = graph(4, false);
  CHECK(as_set(k4.atoms(NodeFilter::all)) == std::set<std::string>{"A_1+A_{3,1}", "A_{4,5}[a=b=1]"});
  CHECK(as_set(k4.atoms(NodeFilter::nsd)) == std::set<std::string>{"A_{4,9}[b=0]", "A_{4,9}[b=1]"});
  CHECK(as_set(k4.atoms(NodeFilter::de)) ==
        std::set<std::string>{"A_{4,1}", "A_{4,5}[a=b=1]", "A_{4,5}[a=-1,b=1]", "A_{4,9}[b=0]"});
  CHECK(k4.space_dimension(NodeFilter::all) == 2);
  CHECK(k4.space_dimension(NodeFilter::unimodular) == 1);

  CHECK(as_set(graph(3, true).atoms(NodeFilter::nsd)) == std::set<std::string>{"II^R", "II^L"});
}

TEST_CASE("two-point subspaces") {
  const auto& g = graph(3, false);
  CHECK(g.two_point_topology("IX", "VII_0").describe("IX", "VII_0") == "IX open, VII_0 closed");
  CHECK(g.two_point_topology("VII_0", "IX").describe("VII_0", "IX") == "IX open, VII_0 closed");
  CHECK(g.two_point_topology("VIII", "IX").describe("VIII", "IX") == "discrete");
  CHECK_THROWS_AS(g.two_point_topology("IX", "IX"), std::invalid_argument);
  CHECK_THROWS(g.two_point_topology("IX", "nowhere"));
}

TEST_CASE("locating classified algebras in the graph") {
  const auto& g = graph(4, true);
  Classifier cl;
  auto where = [&](const std::string& id, const Params& p) {
    StructureConstants c = cat().instantiate(id, p);
    auto r = cl.classify(c);
    Chirality ch = cat().at(r.class_id).selfdual ? Chirality::selfdual : cl.chirality(c);
    return g.locate(r.class_id, r.params, ch);
  };
  CHECK(where("A_{4,5}", {{"a", Q(1)}, {"b", Q(1)}}) == "A_{4,5}[a=b=1]");
  CHECK(where("A_{4,5}", {{"a", Q(1, 2)}, {"b", Q(1, 2)}}) == "A_{4,5}[a=b]");
  CHECK(where("A_{4,5}", {{"a", Q(-1, 3)}, {"b", Q(1, 2)}}) == "A_{4,5}");
  CHECK(where("A_{4,9}", {{"b", Q(1, 3)}}) == "A_{4,9}[0<b<1]^R");
  CHECK(where("A_{4,9}", {{"b", Q(-1, 3)}}) == "A_{4,9}[-1<b<0]^R");
  CHECK(where("A_{4,12}", {}) == "A_{4,12}^L");
}

TEST_CASE("graph export") {
  const auto& g = graph(3, false);
  auto j = g.to_json();
  CHECK(j.at("nodes").size() == 11);
  CHECK(j.at("edges").size() == g.edges().size());
  std::string dot = g.to_dot();
  CHECK(dot.rfind("digraph K3", 0) == 0);
  CHECK(dot.find("IX") != std::string::npos);
}
