// Acceptance gate: one test case per published criterion, with a listener
// that prints a single PASS/FAIL line for each.

#include <array>
#include <chrono>
#include <cstdio>

#include "helpers.hpp"

using namespace lcy;
using testutil::triangle;
using testutil::triangle_seed;

namespace {

struct CriterionListener : Catch::EventListenerBase {
  using EventListenerBase::EventListenerBase;
  void testCaseEnded(Catch::TestCaseStats const& stats) override {
    std::printf("[%s] %s\n", stats.totals.assertions.allOk() ? "PASS" : "FAIL",
                stats.testInfo->name.c_str());
    std::fflush(stdout);
  }
};

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

bool conjugate(const Mat2& m, const Mat2& n) {
  return sl2_conjugacy(m) == sl2_conjugacy(n);
}

}  // namespace

CATCH_REGISTER_LISTENER(CriterionListener)

TEST_CASE("criterion 1: finite-type table (monodromy, Kodaira, quiver, form)") {
  Stopwatch sw;
  for (long k = 1; k <= 6; k++) {
    Seed S = triangle_seed(k, 0, 0);
    Mat2 mu = monodromy(fan_model_of(S));
    CHECK(conjugate(mu, Mat2(1, -k, 0, 1)));
    CHECK(kodaira_identify(mu.inverse()).str() == "I" + std::to_string(k));
    CHECK(is_finite_type(S));
    CHECK(ade_type(q_form(S)).str() == "A" + std::to_string(k - 1));
  }
  const struct {
    long a, b;
    Mat2 mu;
    const char* kod;
    const char* q;
  } rows[] = {{1, 1, Mat2(0, -1, 1, 1), "II", "A0"},
              {2, 1, Mat2(0, -1, 1, 0), "III", "A1"},
              {3, 1, Mat2(-1, -1, 1, 0), "IV", "A2"}};
  for (auto& r : rows) {
    Seed S = triangle_seed(r.a, r.b, 0);
    Mat2 mu = monodromy(fan_model_of(S));
    CHECK(conjugate(mu, r.mu));
    CHECK(kodaira_identify(mu.inverse()).str() == r.kod);
    CHECK(is_finite_type(S));
    CHECK(ade_type(q_form(S)).str() == r.q);
  }
  CHECK(sw.seconds() < 1.0);
}

TEST_CASE("criterion 2: all-wrap table (monodromy, Kodaira, form, root counts)") {
  Stopwatch sw;
  for (long n = 0; n <= 4; n++) {
    Seed S = triangle_seed(2, 2, 2 + n);
    Mat2 mu = monodromy(fan_model_of(S));
    CHECK(conjugate(mu, Mat2(-1, n, 0, -1)));
    CHECK(kodaira_identify(mu.inverse()).str() == "I" + std::to_string(n) + "*");
    GramLattice q = q_form(S);
    CHECK(ade_type(q).str() == "D" + std::to_string(n + 4));
    Int roots = root_count(q);
    CHECK(roots == 2 * (n + 4) * (n + 3));
    CHECK(roots == Int(testutil::root_count_box_oracle(q)));
  }
  const struct {
    long c;
    Mat2 mu;
    const char* kod;
    const char* q;
    long roots;
  } rows[] = {{3, Mat2(0, 1, -1, -1), "IV*", "E6", 72},
              {4, Mat2(0, 1, -1, 0), "III*", "E7", 126},
              {5, Mat2(1, 1, -1, 0), "II*", "E8", 240}};
  for (auto& r : rows) {
    Seed S = triangle_seed(2, 3, r.c);
    Mat2 mu = monodromy(fan_model_of(S));
    CHECK(conjugate(mu, r.mu));
    CHECK(kodaira_identify(mu.inverse()).str() == r.kod);
    GramLattice q = q_form(S);
    CHECK(ade_type(q).str() == r.q);
    Int roots = root_count(q);
    CHECK(roots == r.roots);
    CHECK(roots == Int(testutil::root_count_box_oracle(q)));
  }
  CHECK(sw.seconds() < 5.0);
}

TEST_CASE("criterion 3: worked examples (developing maps, monodromies, charges)") {
  // cubic in the unrefined triangle presentation: a_i = a_toric - k_i = 1 - 2
  FanModel cubic;
  cubic.rays = {{1, 0}, {0, 1}, {-1, -1}};
  cubic.a_toric = {1, 1, 1};
  cubic.k = {2, 2, 2};
  cubic.a = {-1, -1, -1};
  DevelopingMap dev(cubic);
  CHECK(dev.image(0, 0) == Vec2(1, 0));
  CHECK(dev.image(0, 1) == Vec2(0, 1));
  CHECK(dev.image(0, 2) == Vec2(-1, 1));
  for (long j = -2; j <= 2; j++)
    for (int i = 0; i < 3; i++)
      CHECK(dev.image(j, i) == ((j % 2 + 2) % 2 == 0 ? dev.image(0, i) : -dev.image(0, i)));
  CHECK(monodromy(cubic) == -Mat2::identity());

  FanModel m05 = normalize_fan(testutil::m05_fan());
  DevelopingMap dev5(m05);
  std::vector<Vec2> expect = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}};
  for (size_t i = 0; i < expect.size(); i++) CHECK(dev5.image(long(i)) == expect[i]);
  CHECK(monodromy(m05) == Mat2(0, -1, 1, 1));

  CHECK(charge(normalize_fan(triangle(2, 2, 2))) == 6);
  CHECK(charge(m05) == 2);
  // both equal the total blowup count (asserted internally by charge as well)
  Int k5(0);
  for (auto& k : m05.k) k5 += k;
  CHECK(k5 == 2);
}

TEST_CASE("criterion 4: modular-group table with verified generators") {
  const struct {
    long a, b, c;
    const char* label;
    bool conjectural;
  } rows[] = {{0, 0, 0, "SL2(Z)", false},  {2, 0, 0, "Z x| Z/2", false},
              {1, 1, 0, "Z/5", false},     {2, 1, 0, "Z/3", false},
              {3, 1, 0, "Z/4", false},     {4, 1, 0, "Z", true},
              {5, 1, 0, "Z", true},        {2, 2, 2, "PSL2(Z)", false},
              {2, 2, 3, "Z", false},       {2, 3, 3, "Z/2", false},
              {2, 3, 4, "Trivial", false}, {2, 3, 5, "Trivial", false}};
  for (auto& r : rows) {
    Seed S = triangle_seed(r.a, r.b, r.c);
    ClassificationReport rep = classify(S);
    CHECK(rep.modular.label_str() == r.label);
    CHECK(rep.modular.aut_conjectural == r.conjectural);
    // each emitted generator re-verifies independently of the search: word
    // generators from their word and relabeling alone, the half-turn one by
    // iterating nu_plus and recovering its claimed order
    for (auto& g : rep.modular.generators) {
      if (g.half_turn) {
        FanModel m = fan_model_of(S);
        const std::vector<Vec2> base = {{1, 0}, {0, 1}, {1, 1}, {2, 1},
                                        {1, 2}, {-1, 3}, {3, -1}, {-2, -5}};
        std::vector<Vec2> cur = base;
        int seen = 0;
        for (int k = 1; k <= 12 && seen == 0; k++) {
          bool id = true;
          for (size_t i = 0; i < cur.size(); i++) {
            cur[i] = nu_plus(m, cur[i]);
            id = id && cur[i] == base[i];
          }
          if (id) seen = k;
        }
        CHECK(seen == g.order);
      } else {
        GammaCheck chk = verify_gamma_element(S, g.word, g.relabel);
        CHECK(chk.ok);
      }
    }
  }
  // the one-mutation generator of the cubic: (v1, v2, v3) -> (v1, v1+v2, v2)
  Seed S = triangle_seed(2, 2, 2);
  GammaCheck alpha = verify_gamma_element(S, {2}, {0, 2, 1});
  REQUIRE(alpha.ok);
  PLAction g = alpha.action;
  g.invert = !g.invert;  // the generator direction matching the stated images
  CHECK(g(Vec2(2, 0)) == Vec2(2, 0));    // v1 -> v1
  CHECK(g(Vec2(0, 2)) == Vec2(2, 2));    // v2 -> v1 + v2
  CHECK(g(Vec2(-2, -2)) == Vec2(0, 2));  // v3 -> v2
}

TEST_CASE("criterion 5: three monodromy computations agree on random models") {
  Stopwatch sw;
  std::mt19937 rng(101);
  for (int t = 0; t < 200; t++) {
    FanSeedSpec spec = testutil::random_fan(rng, 6, 4);
    Seed S = seed_from_fan_spec(spec);
    FanModel m = fan_model_of(S);
    Mat2 mu_inv = monodromy(m).inverse();
    // exact agreement in the seed's chart; the raw spec sits in its own
    // chart (and may gain spanning rays), so its matrix agrees up to
    // conjugacy only
    CHECK(monodromy_from_factorization(fan_data_of(S)) == mu_inv);
    CHECK(monodromy_mutation_product(m) == mu_inv);
    CHECK(monodromy_via_mutations(S) == mu_inv);
    CHECK(conjugate(monodromy_from_factorization(spec), mu_inv));
  }
  CHECK(sw.seconds() < 30.0);
}

TEST_CASE("criterion 6: classification invariant under mutation and re-encoding") {
  std::mt19937 rng(103);
  ClassifyOptions opts{-1, false};
  std::uniform_int_distribution<int> len(1, 8);
  for (int t = 0; t < 100; t++) {
    Seed S = seed_from_fan_spec(testutil::random_fan(rng, 5, 3));
    std::string ref = classify(S, opts).invariant_view();
    std::vector<int> nonfrozen;
    for (int i = 0; i < S.n; i++)
      if (!S.frozen[size_t(i)]) nonfrozen.push_back(i);
    std::uniform_int_distribution<size_t> pick(0, nonfrozen.size() - 1);
    Seed cur = S;
    int L = len(rng);
    for (int s = 0; s < L; s++) cur = mutate(cur, nonfrozen[pick(rng)]);
    CHECK(classify(cur, opts).invariant_view() == ref);
    CHECK(classify(make_coprime(S), opts).invariant_view() == ref);
    CHECK(classify(maximally_factor(S), opts).invariant_view() == ref);
  }
}

TEST_CASE("criterion 7: cross-criteria audit holds on the whole corpus") {
  // classify() itself cross-checks every pair of independent criteria and
  // throws on any inconsistency; sweep the canonical models plus a random
  // corpus, and confront the verdicts with sampled line behavior
  std::vector<Seed> corpus;
  for (long k = 0; k <= 6; k++) corpus.push_back(triangle_seed(k, 0, 0));
  const std::vector<std::array<long, 3>> tris = {
      {1, 1, 0}, {2, 1, 0}, {3, 1, 0}, {4, 1, 0}, {5, 1, 0}, {2, 2, 2}, {2, 2, 3},
      {2, 2, 6}, {2, 3, 3}, {2, 3, 4}, {2, 3, 5}, {3, 3, 3}, {4, 4, 4}, {5, 5, 5}};
  for (auto& tri : tris) corpus.push_back(triangle_seed(tri[0], tri[1], tri[2]));
  std::mt19937 rng(107);
  for (int t = 0; t < 80; t++)
    corpus.push_back(seed_from_fan_spec(testutil::random_fan(rng, 5, 3)));
  ClassifyOptions opts{-1, false};
  for (auto& S : corpus) {
    ClassificationReport r;
    REQUIRE_NOTHROW(r = classify(S, opts));
    FanModel m = fan_model_of(S);
    LineTrace tr = trace_line(m, 0, QVec2(Vec2(17, 5)), QVec2(Vec2(1, 3)), 40);
    if (r.cls == ClassificationReport::NegativeDefinite) {
      CHECK(std::holds_alternative<TraceWrapsInfinitely>(tr.verdict));
    } else if (r.cls == ClassificationReport::FiniteType) {
      REQUIRE(std::holds_alternative<TraceEscapes>(tr.verdict));
      CHECK(std::get<TraceEscapes>(tr.verdict).wrap_count == 0);
    } else if (r.cls == ClassificationReport::PositiveNonAcyclic) {
      REQUIRE(std::holds_alternative<TraceEscapes>(tr.verdict));
      CHECK(std::get<TraceEscapes>(tr.verdict).wrap_count >= 1);
    }
  }
}

TEST_CASE("criterion 8: the nu maps are inverse bijections realizing -mu^-1") {
  // the half-turn lands on a definite sheet of the cover, so in developed
  // coordinates the image agrees with -mu^-1 times the source up to a deck
  // power (a power of mu)
  auto deck_match = [](const Mat2& mu, const QVec2& got, QVec2 want) {
    Mat2 mi = mu.inverse();
    QVec2 lo = want, hi = want;
    for (int k = 0; k <= 4; k++) {
      if (got == lo || got == hi) return true;
      lo = mi * lo;
      hi = mu * hi;
    }
    return false;
  };
  std::vector<Seed> models = {triangle_seed(1, 0, 0), triangle_seed(3, 1, 0),
                              triangle_seed(2, 2, 2), triangle_seed(2, 3, 5),
                              seed_from_fan_spec(testutil::m05_fan())};
  std::mt19937 rng(109);
  std::uniform_int_distribution<long> c(-9, 9);
  for (auto& S : models) {
    FanModel m = fan_model_of(S);
    Mat2 mu = monodromy(m);
    DevelopingMap dev(m);
    int done = 0;
    while (done < 100) {
      Vec2 q(c(rng), c(rng));
      if (q.is_zero()) continue;
      done++;
      Vec2 p = nu_plus(m, q);
      CHECK(nu_minus(m, p) == q);
      CHECK(nu_plus(m, nu_minus(m, q)) == q);
      QVec2 dq = dev_coords(dev, QVec2(q));
      CHECK(deck_match(mu, dev_coords(dev, QVec2(p)), -(mu.inverse() * dq)));
      CHECK(deck_match(mu, dev_coords(dev, QVec2(nu_minus(m, q))), -(mu * dq)));
    }
  }
  // worked values: the nodal-fiber model sends (0, 1) to (-1, -1), and the
  // cubic model's half-turn is the identity
  FanModel i1 = fan_model_of(triangle_seed(1, 0, 0));
  CHECK(nu_plus(i1, Vec2(0, 1)) == Vec2(-1, -1));
  FanModel cubic = fan_model_of(triangle_seed(2, 2, 2));
  CHECK(nu_plus(cubic, Vec2(3, -2)) == Vec2(3, -2));
}

TEST_CASE("criterion 9: charge is invariant under random refinements") {
  std::mt19937 rng(113);
  std::uniform_int_distribution<long> coord(-5, 5);
  std::uniform_int_distribution<int> extra(1, 3);
  for (auto base : {triangle(2, 2, 2), triangle(2, 3, 4), triangle(1, 0, 0),
                    testutil::m05_fan()}) {
    Int c0 = charge(normalize_fan(base));
    for (int t = 0; t < 50; t++) {
      FanSeedSpec refined = base;
      int add = extra(rng);
      for (int i = 0; i < add; i++) {
        Vec2 u(coord(rng), coord(rng));
        if (u.is_zero()) continue;
        u = primitive(u);
        bool dup = false;
        for (auto& r : refined) dup = dup || r.u == u;
        if (!dup) refined.push_back({u, 0, true});
      }
      CHECK(charge(normalize_fan(refined)) == c0);
    }
  }
}
