#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace lieclass;
using namespace testing_support;

namespace {
const Catalog& cat() { return Catalog::bundled(); }
}  // namespace

TEST_CASE("series, center, Killing inertia and unimodularity agree with sympy") {
  REQUIRE(oracle_invariants().size() > 40);
  for (const auto& o : oracle_invariants()) {
    StructureConstants c = cat().instantiate(o.id, params_of(o.params));
    INFO(o.id);
    auto p = series_profile(c);
    CHECK(p.central_dims == o.central);
    CHECK(p.derived_dims == o.derived);
    CHECK(center(c).dim() == o.center);
    CHECK(inertia(killing_form(c)) == o.killing);
    CHECK(is_unimodular(c) == o.unimodular);
  }
}

TEST_CASE("Killing matrices agree with sympy") {
  for (const auto& o : oracle_killing()) {
    INFO(o.id);
    CHECK(killing_form(cat().instantiate(o.id)) == qmatrix(o.k));
  }
}

TEST_CASE("Behr decomposition agrees with sympy and recombines") {
  REQUIRE_FALSE(oracle_behr().empty());
  for (const auto& o : oracle_behr()) {
    StructureConstants c = cat().instantiate(o.id, params_of(o.params));
    INFO(o.id);
    BehrForm b = behr_form(c);
    CHECK(b.n == qmatrix(o.n));
    Vec a;
    for (const auto& s : o.a) a.push_back(parse_rational(s));
    CHECK(b.a == a);
    CHECK(behr_recombine(b) == c);
  }
  CHECK_THROWS(behr_form(cat().instantiate("A_{4,1}")));
}

TEST_CASE("series profile flags") {
  auto h = series_profile(cat().instantiate("A_{3,1}"));
  CHECK(h.nilpotent);
  CHECK(h.nilpotency_degree == 2u);
  auto s = series_profile(cat().instantiate("A_{3,8}"));
  CHECK_FALSE(s.solvable);
  CHECK_FALSE(s.nilpotent);
  auto f = series_profile(cat().instantiate("A_{4,1}"));
  CHECK(f.nilpotent);
  CHECK(f.central_dims == std::vector<std::size_t>{4, 2, 1, 0});
  auto v = series_profile(cat().instantiate("A_{3,3}"));
  CHECK(v.solvable);
  CHECK(v.solvability_degree == 2u);
}

TEST_CASE("invariant signature is unchanged by 200 random basis changes") {
  std::mt19937 rng(2024);
  const auto samples = all_samples();
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& [id, p] = samples[pick(rng)];
    StructureConstants c = cat().instantiate(id, p);
    StructureConstants moved = apply_basis_change(c, random_gl(rng, c.dim()));
    INFO(id << " trial " << trial);
    CHECK(invariant_signature(moved) == invariant_signature(c));
    CHECK(decompose_direct_sum(moved).essential_dimension == decompose_direct_sum(c).essential_dimension);
    CHECK(radical(moved).dim() == radical(c).dim());
  }
}

TEST_CASE("Behr sign pattern distinguishes the unimodular Bianchi types") {
  auto behr = [](const std::string& id) { return *invariant_signature(cat().instantiate(id)).behr; };
  CHECK(behr("A_{3,9}").major == 3);
  CHECK(behr("A_{3,8}").major == 2);
  CHECK(behr("A_{3,8}").minor == 1);
  CHECK(behr("A_{3,6}").major == 2);
  CHECK(behr("A_{3,6}").zero == 1);
  CHECK(behr("A_{3,4}").major == 1);
  CHECK(behr("A_{3,4}").minor == 1);
  CHECK(behr("A_{3,1}").zero == 2);
  CHECK(behr("A_{3,1}").a_zero);
  CHECK_FALSE(behr("A_{3,3}").a_zero);
  CHECK_FALSE(invariant_signature(cat().instantiate("A_{4,1}")).behr);
}

TEST_CASE("codimension-one ideals are ideals containing the derived algebra") {
  for (const auto& [id, p] : all_samples()) {
    StructureConstants c = cat().instantiate(id, p);
    if (c.dim() < 2) continue;
    INFO(id);
    auto ci = codim1_ideals(c);
    Subspace d = derived_algebra(c);
    for (const auto& h : ci.ideals) {
      CHECK(h.space.dim() == c.dim() - 1);
      CHECK(is_ideal(c, h.space));
      CHECK(h.space.contains(d));
    }
    // a codim-1 ideal exists exactly when the derived algebra is proper
    if (d.dim() < c.dim() && !ci.irrational_skipped) CHECK_FALSE(ci.ideals.empty());
    if (d.dim() == c.dim()) CHECK(ci.ideals.empty());
  }
}

TEST_CASE("ideal types of small examples") {
  auto types = [](const std::string& id, Params p = {}) {
    std::vector<IdealType> t;
    for (const auto& h : codim1_ideals(cat().instantiate(id, p)).ideals) t.push_back(h.type);
    return t;
  };
  auto has = [](const std::vector<IdealType>& v, IdealType t) { return std::find(v.begin(), v.end(), t) != v.end(); };
  CHECK(has(types("A_{3,3}"), IdealType::abelian));
  CHECK(has(types("A_{4,7}"), IdealType::heisenberg));
  CHECK_FALSE(has(types("A_{4,12}"), IdealType::other));
  CHECK(has(types("A_1+A_{3,3}"), IdealType::vtype));
  CHECK(types("A_{3,8}").empty());
  CHECK(std::string(ideal_type_name(IdealType::heisenberg)) == "II");
  CHECK(std::string(ideal_type_name(IdealType::vtype)) == "V");
}

TEST_CASE("radical and Levi part") {
  CHECK(radical(cat().instantiate("A_{3,8}")).dim() == 0);
  CHECK(radical(cat().instantiate("A_{3,9}")).dim() == 0);
  CHECK(radical(cat().instantiate("A_1+A_{3,8}")).dim() == 1);
  CHECK(radical(cat().instantiate("A_{4,10}")).dim() == 4);
  CHECK(radical(cat().instantiate("A_{3,5}", {{"a", Q(1, 2)}})).dim() == 3);
}

TEST_CASE("direct sum decomposition") {
  auto ds = decompose_direct_sum(cat().instantiate("A_1+A_{3,5}", {{"a", Q(1, 2)}}));
  CHECK(ds.essential_dimension == 3);
  REQUIRE(ds.factors.size() == 2);
  CHECK(ds.factors[0].dim() == 3);
  CHECK(ds.factors[1].dim() == 1);

  auto two = decompose_direct_sum(cat().instantiate("2A_2"));
  REQUIRE(two.factors.size() == 2);
  CHECK(two.factors[0].dim() == 2);
  CHECK(two.factors[1].dim() == 2);
  for (const auto& f : two.factors) CHECK(series_profile(f).derived_dims == std::vector<std::size_t>{2, 1, 0});

  CHECK(decompose_direct_sum(cat().instantiate("A_{4,12}")).factors.size() == 1);
  CHECK(decompose_direct_sum(cat().instantiate("4A_1")).essential_dimension == 0);
  // A_{4,1} has a central vector inside the derived algebra only
  CHECK(decompose_direct_sum(cat().instantiate("A_{4,1}")).essential_dimension == 4);
}

TEST_CASE("2A_2 splits after a random basis change") {
  std::mt19937 rng(5);
  StructureConstants c = cat().instantiate("2A_2");
  for (int trial = 0; trial < 20; ++trial) {
    StructureConstants moved = apply_basis_change(c, random_gl(rng, 4));
    auto ds = decompose_direct_sum(moved);
    REQUIRE(ds.factors.size() == 2);
    for (const auto& f : ds.factors) CHECK(validate(f).valid());
  }
}

TEST_CASE("subspace algebra") {
  Subspace a = Subspace::span(3, {{1, 0, 0}, {1, 1, 0}});
  Subspace b = Subspace::span(3, {{0, 1, 0}, {0, 0, 1}});
  CHECK(a.dim() == 2);
  CHECK(sum(a, b).dim() == 3);
  CHECK(intersect(a, b).dim() == 1);
  CHECK(intersect(a, b).contains(Vec{0, 5, 0}));
  CHECK(a.complement().size() == 1);
  CHECK_FALSE(a.contains(a.complement()[0]));
}
