#include "helpers.hpp"

using namespace lcy;
using testutil::triangle_seed;

namespace {
Seed a2_seed() {
  Seed S;
  S.n = 2;
  S.skew = RatMatrix(2, 2);
  S.skew(0, 1) = 1;
  S.skew(1, 0) = -1;
  S.d = {Rat(1), Rat(1)};
  S.frozen = {false, false};
  S.basis_coords = IntMatrix::identity(2);
  S.validate();
  return S;
}
}  // namespace

TEST_CASE("empty word with identity relabel is rejected by the search but verifies") {
  Seed S = triangle_seed(2, 2, 2);
  GammaCheck chk = verify_gamma_element(S, {}, {0, 1, 2});
  REQUIRE(chk.ok);
  CHECK(detail::pointwise_identity(chk.action));
}

TEST_CASE("relabel-only rotation of the cubic seed") {
  Seed S = triangle_seed(2, 2, 2);
  GammaCheck chk = verify_gamma_element(S, {}, {1, 2, 0});
  REQUIRE(chk.ok);
  REQUIRE(chk.linear);
  CHECK(chk.matrix == Mat2(0, -1, 1, -1));
  CHECK(detail::pointwise_order(chk.action) == 3);
}

TEST_CASE("one-mutation element of the cubic seed") {
  Seed S = triangle_seed(2, 2, 2);
  GammaCheck chk = verify_gamma_element(S, {2}, {0, 2, 1});
  REQUIRE(chk.ok);
  // v1 fixed, v1+v2 -> v2, v2 -> v3 (chart coords of the cubic directions)
  CHECK(chk.action(Vec2(2, 0)) == Vec2(2, 0));
  CHECK(chk.action(Vec2(2, 2)) == Vec2(0, 2));
  CHECK(chk.action(Vec2(0, 2)) == Vec2(-2, -2));
  CHECK(detail::pointwise_order(chk.action) == 0);  // infinite order
}

TEST_CASE("wrong relabel fails verification") {
  Seed S = triangle_seed(2, 2, 2);
  GammaCheck chk = verify_gamma_element(S, {2}, {0, 1, 2});
  CHECK(!chk.ok);
  CHECK(!chk.reason.empty());
}

TEST_CASE("order-five element of the rank-two seed") {
  Seed S = a2_seed();
  GammaCheck chk = verify_gamma_element(S, {0}, {1, 0});
  REQUIRE(chk.ok);
  CHECK(detail::pointwise_order(chk.action) == 5);
  // pentagon: five alternating mutations compose to the swap itself
  GammaCheck pent = verify_gamma_element(S, {0, 1, 0, 1, 0}, {1, 0});
  REQUIRE(pent.ok);
  CHECK(detail::pointwise_identity(pent.action));
}

TEST_CASE("classification of the cubic") {
  ClassificationReport r = classify(triangle_seed(2, 2, 2));
  CHECK(r.class_str() == "PositiveNonAcyclic(I0*)");
  CHECK(r.kodaira.str() == "I0*");
  CHECK(r.charge_value == 6);
  CHECK(ade_type(q_form(triangle_seed(2, 2, 2))).str() == "D4");
  CHECK(r.q_type.str() == "D4");
  CHECK(r.modular.label_str() == "PSL2(Z)");
  REQUIRE(r.modular.generators.size() == 2);
  CHECK(r.modular.generators[0].order == 3);
  CHECK(r.modular.generators[1].order == 0);
  CHECK(!r.modular.aut_conjectural);
}

TEST_CASE("classification of the small finite-type model") {
  ClassificationReport r = classify(triangle_seed(1, 1, 0));
  CHECK(r.class_str() == "FiniteType(II)");
  CHECK(r.finite_type);
  CHECK(r.acyclic);
  CHECK(r.charge_value == 2);
  CHECK(r.q_type.str() == "A0");
  CHECK(r.modular.label_str() == "Z/5");
  REQUIRE(r.modular.generators.size() == 1);
  CHECK(r.modular.generators[0].order == 5);
}

TEST_CASE("classification of the acyclic-infinite model") {
  ClassificationReport r = classify(triangle_seed(5, 1, 0));
  CHECK(r.class_str() == "AcyclicInfinite(SomeWrap)");
  CHECK(r.acyclic);
  CHECK(!r.finite_type);
  CHECK(r.modular.label_str() == "Z");
  CHECK(r.modular.aut_conjectural);
}

TEST_CASE("classification of the non-positive models") {
  ClassificationReport neg = classify(triangle_seed(5, 5, 5), {-1, false});
  CHECK(neg.class_str() == "NegativeDefinite");
  CHECK(neg.h_sig == DefSign::NegativeDefinite);
  CHECK(neg.modular.label_str() == "NotComputed");

  ClassificationReport semi = classify(triangle_seed(3, 3, 3), {-1, false});
  CHECK(semi.class_str() == "SemidefiniteNotDefinite");
  CHECK(semi.h_sig == DefSign::SemidefiniteNotDefinite);
}

TEST_CASE("table of modular-group labels") {
  auto label = [](long a, long b, long c) {
    return classify(triangle_seed(a, b, c), {-1, false}).modular.label_str();
  };
  CHECK(label(1, 0, 0) == "Z x| Z/2");
  CHECK(label(3, 0, 0) == "Z x| Z/2");
  CHECK(label(1, 1, 0) == "Z/5");
  CHECK(label(2, 1, 0) == "Z/3");
  CHECK(label(3, 1, 0) == "Z/4");
  CHECK(label(4, 1, 0) == "Z");
  CHECK(label(2, 2, 2) == "PSL2(Z)");
  CHECK(label(2, 2, 3) == "Z");
  CHECK(label(2, 3, 3) == "Z/2");
  CHECK(label(2, 3, 4) == "Trivial");
  CHECK(label(2, 3, 5) == "Trivial");
}

TEST_CASE("invariant view is stable under mutation") {
  std::mt19937 rng(61);
  ClassifyOptions opts{-1, false};
  for (auto base : {triangle_seed(2, 2, 2), triangle_seed(3, 1, 0),
                    triangle_seed(2, 2, 3), triangle_seed(5, 1, 0)}) {
    std::string ref = classify(base, opts).invariant_view();
    std::vector<int> nonfrozen;
    for (int i = 0; i < base.n; i++)
      if (!base.frozen[size_t(i)]) nonfrozen.push_back(i);
    std::uniform_int_distribution<size_t> pick(0, nonfrozen.size() - 1);
    Seed cur = base;
    for (int s = 0; s < 5; s++) {
      cur = mutate(cur, nonfrozen[pick(rng)]);
      CHECK(classify(cur, opts).invariant_view() == ref);
    }
  }
}
