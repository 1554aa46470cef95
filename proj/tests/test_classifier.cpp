#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace lieclass;
using namespace testing_support;

namespace {
const Catalog& cat() { return Catalog::bundled(); }

QMatrix reflection(std::size_t n) {
  QMatrix r = QMatrix::identity(n);
  r(0, 0) = -1;
  return r;
}

/// Random matrix with the requested determinant sign.
QMatrix random_oriented(std::mt19937& rng, std::size_t n, int sign) {
  QMatrix m = random_gl(rng, n);
  if (sgn(determinant(m)) != sign) m = m * reflection(n);
  return m;
}
}  // namespace

TEST_CASE("every catalog sample classifies to itself") {
  Classifier cl;
  for (const auto& [id, p] : all_samples()) {
    INFO(id);
    auto r = cl.classify(cat().instantiate(id, p));
    CHECK(r.class_id == id);
    Params canon = p;
    canonicalize_params(id, canon);
    CHECK(r.params == to_real(canon));
    // simple factors are recognised by their Killing form; no rational witness is searched
    if (radical(cat().instantiate(id, p)).dim() + 3 == cat().at(id).dim) {
      CHECK_FALSE(r.witness);
      continue;
    }
    REQUIRE(r.witness);
    CHECK(apply_basis_change(cat().instantiate(id, p), *r.witness) == cat().instantiate(id, canon));
  }
}

TEST_CASE("classification is invariant under random basis changes") {
  Classifier cl;
  std::mt19937 rng(99);
  for (const auto& [id, p] : all_samples()) {
    StructureConstants c = cat().instantiate(id, p);
    auto base = cl.classify(c);
    for (int trial = 0; trial < 3; ++trial) {
      StructureConstants moved = apply_basis_change(c, random_gl(rng, c.dim()));
      auto r = cl.classify(moved);
      INFO(id << " trial " << trial);
      CHECK(r.same_class(base));
      if (r.witness) {
        auto q = [&] {
          Params out;
          for (const auto& [k, v] : r.params) out[k] = v.rational();
          return out;
        }();
        CHECK(apply_basis_change(moved, *r.witness) == cat().instantiate(r.class_id, q));
      }
    }
  }
}

TEST_CASE("invalid and unsupported input is rejected") {
  Classifier cl;
  StructureConstants bad = from_brackets(3, {{1, 2, 3, Q(1)}, {1, 3, 1, Q(1)}});
  CHECK_THROWS_AS(cl.classify(bad), InvalidAlgebra);
  CHECK_THROWS_AS(cl.classify(family::ii(5)), Unsupported);
}

TEST_CASE("distinct parameters are separated") {
  Classifier cl;
  auto a = cl.classify(cat().instantiate("A_{3,5}", {{"a", Q(1, 2)}}));
  auto b = cl.classify(cat().instantiate("A_{3,5}", {{"a", Q(1, 3)}}));
  CHECK_FALSE(a.same_class(b));
  auto v = cl.classify(cat().instantiate("A_{3,7}", {{"a", Q(1, 2)}}));
  CHECK(v.params.at("a") == RealNum(Q(1, 2)));
}

TEST_CASE("irrational parameters come back exactly") {
  // A_{3,5}: eigenvalues 1 and a; give ad e3 eigenvalues 1 +- sqrt 2 via a rational matrix
  Classifier cl;
  StructureConstants c = from_brackets(3, {{1, 3, 1, Q(-1)}, {1, 3, 2, Q(-1)}, {2, 3, 1, Q(-2)}, {2, 3, 2, Q(-1)}});
  REQUIRE(validate(c).valid());
  auto r = cl.classify(c);
  CHECK(r.class_id == "A_{3,5}");
  const RealNum& a = r.params.at("a");
  CHECK_FALSE(a.is_rational());
  // a = (1 - sqrt2)/(1 + sqrt2) = 2 sqrt2 - 3, root of x^2 + 6x + 1
  CHECK(a.poly().monic() == Poly(std::vector<Q>{Q(1), Q(6), Q(1)}));
  CHECK(a.approx() == Catch::Approx(2 * std::sqrt(2.0) - 3).epsilon(1e-12));
  CHECK_FALSE(r.witness);
}

TEST_CASE("duality witnesses reverse orientation and fix the tensor") {
  Classifier cl;
  std::size_t witnessed = 0, selfdual = 0;
  for (const auto& [id, p] : all_samples()) {
    StructureConstants c = cat().instantiate(id, p);
    auto v = duality_verdict(c, cl);
    INFO(id << " via " << v.method);
    CHECK(v.selfdual == cat().at(id).selfdual);
    if (!v.selfdual) {
      CHECK_FALSE(v.witness);
      continue;
    }
    ++selfdual;
    REQUIRE(v.witness);
    ++witnessed;
    CHECK(sgn(determinant(*v.witness)) < 0);
    CHECK(apply_basis_change(c, *v.witness) == c);
  }
  CHECK(witnessed == selfdual);
}

TEST_CASE("named duality witnesses") {
  StructureConstants a48 = cat().instantiate("A_{4,8}");
  QMatrix w48 = signed_permutation({0, 2, 1, 3}, {-1, 1, 1, -1});
  CHECK(sgn(determinant(w48)) < 0);
  // [e2,e3]=e1, [e2,e4]=e2, [e3,e4]=-e3: swap e2 and e3, e1 -> -e1, e4 -> -e4
  CHECK(apply_basis_change(a48, w48) == a48);
  StructureConstants a410 = cat().instantiate("A_{4,10}");
  QMatrix w410 = signed_permutation({0, 1, 2, 3}, {-1, 1, -1, -1});
  CHECK(apply_basis_change(a410, w410) == a410);
  auto v = duality_verdict(a410);
  CHECK(v.method == "signed-permutation");
  // duality after a random conjugation still finds a witness
  std::mt19937 rng(1);
  StructureConstants moved = apply_basis_change(a48, random_gl(rng, 4));
  auto mv = duality_verdict(moved);
  REQUIRE(mv.witness);
  CHECK(apply_basis_change(moved, *mv.witness) == moved);
}

TEST_CASE("central reflection handles split central factors") {
  StructureConstants c = cat().instantiate("A_1+A_{3,3}");
  auto w = central_reflection(c);
  REQUIRE(w);
  CHECK(sgn(determinant(*w)) < 0);
  CHECK(apply_basis_change(c, *w) == c);
  CHECK_FALSE(central_reflection(cat().instantiate("A_{4,1}")));
}

TEST_CASE("chirality of non-selfdual classes") {
  Classifier cl;
  std::mt19937 rng(17);
  for (const auto& c : cat().classes()) {
    if (c.selfdual) {
      CHECK_THROWS_AS(cl.chirality(cat().instantiate(c.id, c.samples.at(0))), std::domain_error);
      continue;
    }
    for (const auto& p : c.samples) {
      INFO(c.id);
      StructureConstants t = cat().instantiate(c.id, p);
      Chirality base = cl.chirality(t);
      CHECK(base == (c.template_left ? Chirality::L : Chirality::R));
      Chirality other = base == Chirality::R ? Chirality::L : Chirality::R;
      CHECK(cl.chirality(apply_basis_change(t, reflection(t.dim()))) == other);
      for (int trial = 0; trial < 3; ++trial) {
        CHECK(cl.chirality(apply_basis_change(t, random_oriented(rng, t.dim(), 1))) == base);
        CHECK(cl.chirality(apply_basis_change(t, random_oriented(rng, t.dim(), -1))) == other);
      }
    }
  }
}

TEST_CASE("signed permutation search finds orientation-preserving automorphisms too") {
  StructureConstants c = cat().instantiate("A_{3,9}");
  auto keep = search_signed_permutation(c, 1);
  REQUIRE(keep.witness);
  CHECK(sgn(determinant(*keep.witness)) > 0);
  CHECK_FALSE(search_signed_permutation(c, -1).witness);
  CHECK(keep.nodes > 0);
}
