#pragma once
// Full cross-validated classification and the modular-group image on the
// tropical plane, with verified generators.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcy/monodromy.hpp"
#include "lcy/surface.hpp"

namespace lcy {

// ---- piecewise-linear plane actions (mutation word + relabeling) ----

struct PLAction {
  std::vector<TropPL> steps;  // applied first, in order
  Mat2 phi;                   // then the linear relabeling map, |det| = 1
  bool invert{false};         // act as the inverse of the composite

  QVec2 operator()(QVec2 u) const {
    if (!invert) {
      for (auto& s : steps) u = s(u);
      return phi * u;
    }
    u = phi.inverse() * u;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      // inverse of u -> u + d' max(u ^ ubar, 0) ubar (the wedge is preserved)
      Rat c = wedge(u, QVec2(it->ubar));
      if (sgn(c) > 0) u = u - QVec2(it->ubar) * (Rat(it->dprime) * c);
    }
    return u;
  }
  Vec2 operator()(const Vec2& u) const {
    QVec2 r = (*this)(QVec2(u));
    if (r.x.get_den() != 1 || r.y.get_den() != 1)
      throw std::logic_error("PLAction: non-integral image of a lattice point");
    return {r.x.get_num(), r.y.get_num()};
  }
};

namespace detail {
inline const std::vector<Vec2>& sample_points() {
  static const std::vector<Vec2> pts = {{1, 0}, {0, 1},  {1, 1},  {2, 1},
                                        {1, 2}, {-1, 3}, {3, -1}, {-2, -5}};
  return pts;
}

inline std::vector<Vec2> images(const PLAction& g) {
  std::vector<Vec2> out;
  for (auto& p : sample_points()) out.push_back(g(p));
  return out;
}

inline bool pointwise_identity(const PLAction& g) {
  for (auto& p : sample_points())
    if (!(g(p) == p)) return false;
  return true;
}

// pointwise order on the sample set; 0 when the cap is exceeded
inline int pointwise_order(const PLAction& g, int cap = 12) {
  std::vector<Vec2> cur(sample_points());
  for (int k = 1; k <= cap; k++) {
    bool id = true;
    for (size_t i = 0; i < cur.size(); i++) {
      cur[i] = g(cur[i]);
      id = id && cur[i] == sample_points()[i];
    }
    if (id) return k;
  }
  return 0;
}
}  // namespace detail

struct GammaCheck {
  bool ok{false};
  std::string reason;
  PLAction action;  // the induced automorphism (inverse orientation built in)
  bool linear{false};
  Mat2 matrix;  // valid when linear
};

// Applies the mutation word, checks that the relabeling is a seed
// isomorphism back onto the start seed (up to simultaneous positive
// rescaling; frozen-set preservation only in strict mode), and builds the
// induced plane action.
inline GammaCheck verify_gamma_element(const Seed& S_in, const std::vector<int>& word,
                                       const std::vector<int>& relabel,
                                       bool strict = false) {
  GammaCheck out;
  Seed S = S_in;
  S.basis_coords = IntMatrix::identity(S.n);  // rebase: own basis as ambient
  if (int(relabel.size()) != S.n) {
    out.reason = "relabel size mismatch";
    return out;
  }
  {
    std::vector<bool> seen(size_t(S.n), false);
    for (int h : relabel) {
      if (h < 0 || h >= S.n || seen[size_t(h)]) {
        out.reason = "relabel not a permutation";
        return out;
      }
      seen[size_t(h)] = true;
    }
  }
  Nbar2 base = nbar2_coords(S);
  // mutate along the word, collecting the tropical chart maps
  Seed cur = S;
  std::vector<TropPL> steps;
  for (int j : word) {
    if (j < 0 || j >= S.n || S.frozen[size_t(j)]) {
      out.reason = "word index invalid or frozen";
      return out;
    }
    steps.push_back(tropical_x_mutation_in_chart(base, cur, j));
    cur = mutate(cur, j);
  }
  // seed isomorphism: d and skew match through h up to one positive rescale
  if (strict) {
    for (int i = 0; i < S.n; i++)
      if (cur.frozen[size_t(i)] != S.frozen[size_t(relabel[size_t(i)])]) {
        out.reason = "frozen set not preserved";
        return out;
      }
  }
  Rat c(0);
  for (int i = 0; i < S.n && sgn(c) == 0; i++)
    for (int j = 0; j < S.n && sgn(c) == 0; j++)
      if (sgn(cur.skew(i, j)) != 0) {
        Rat tgt = S.skew(relabel[size_t(i)], relabel[size_t(j)]);
        if (sgn(tgt) == 0) {
          out.reason = "skew pattern mismatch";
          return out;
        }
        c = cur.skew(i, j) / tgt;
      }
  if (sgn(c) == 0) c = 1;
  if (sgn(c) < 0) {
    out.reason = "skew rescale not positive";
    return out;
  }
  for (int i = 0; i < S.n; i++) {
    if (cur.d[size_t(i)] * c != S.d[size_t(relabel[size_t(i)])]) {
      out.reason = "multipliers not preserved";
      return out;
    }
    for (int j = 0; j < S.n; j++)
      if (cur.skew(i, j) != c * S.skew(relabel[size_t(i)], relabel[size_t(j)])) {
        out.reason = "skew form not preserved";
        return out;
      }
  }
  // blowup counts must match through the relabeling: a map exchanging rays
  // with different d' is not a surface automorphism
  {
    Nbar2 nb_cur = nbar2_coords(cur);
    for (int i = 0; i < S.n; i++) {
      Int a = cur.frozen[size_t(i)] ? Int(0) : nb_cur.dprime[size_t(i)];
      Int b = S.frozen[size_t(relabel[size_t(i)])]
                  ? Int(0)
                  : base.dprime[size_t(relabel[size_t(i)])];
      if (a != b) {
        out.reason = "blowup data not preserved";
        return out;
      }
    }
  }
  // linear relabeling map: phi(pi(e'_i)) = v_{h(i)} for all i
  std::vector<Vec2> x(size_t(S.n));
  for (int i = 0; i < S.n; i++) {
    std::vector<Int> row(size_t(S.n));
    for (int t = 0; t < S.n; t++) row[size_t(t)] = cur.basis_coords(i, t);
    x[size_t(i)] = nbar2_project(base, row);
  }
  int i1 = -1, i2 = -1;
  for (int i = 0; i < S.n && i2 < 0; i++)
    for (int j = i + 1; j < S.n && i2 < 0; j++)
      if (sgn(wedge(x[size_t(i)], x[size_t(j)])) != 0) {
        i1 = i;
        i2 = j;
      }
  if (i2 < 0) {
    out.reason = "mutated images do not span";
    return out;
  }
  // solve the 2x2 system phi * [x_{i1} x_{i2}] = [v_{h(i1)} v_{h(i2)}]
  Mat2 X(x[size_t(i1)].x, x[size_t(i2)].x, x[size_t(i1)].y, x[size_t(i2)].y);
  Vec2 t1 = base.v[size_t(relabel[size_t(i1)])];
  Vec2 t2 = base.v[size_t(relabel[size_t(i2)])];
  Mat2 T(t1.x, t2.x, t1.y, t2.y);
  Int dx = X.det();
  // phi = T X^{-1}; X^{-1} = adj(X)/det
  Mat2 adj(X.d, -X.b, -X.c, X.a);
  Mat2 num = T * adj;
  Mat2 phi;
  {
    auto divide = [&](const Int& v) {
      if (sgn(dx) == 0 || v % dx != 0)
        throw std::logic_error("verify_gamma_element: relabel map not integral");
      return v / dx;
    };
    try {
      phi = Mat2(divide(num.a), divide(num.b), divide(num.c), divide(num.d));
    } catch (const std::logic_error&) {
      out.reason = "relabel map not integral";
      return out;
    }
  }
  Int dphi = phi.det();
  if (dphi != 1 && dphi != -1) {
    out.reason = "relabel map not unimodular";
    return out;
  }
  for (int i = 0; i < S.n; i++)
    if (!(phi * x[size_t(i)] == base.v[size_t(relabel[size_t(i)])])) {
      out.reason = "relabel map not consistent on all images";
      return out;
    }
  out.ok = true;
  out.action = PLAction{steps, phi, false};
  // extract a matrix when the plane action happens to be linear
  Vec2 g1 = out.action(Vec2(1, 0));
  Vec2 g2 = out.action(Vec2(0, 1));
  Mat2 M(g1.x, g2.x, g1.y, g2.y);
  out.linear = true;
  for (auto& p : detail::sample_points())
    out.linear = out.linear && (M * p == out.action(p));
  if (out.linear) out.matrix = M;
  return out;
}

// ---- modular group ----

struct GammaElement {
  std::vector<int> word;     // empty for the half-turn generator
  std::vector<int> relabel;  // empty for the half-turn generator
  PLAction action;           // mutation-word elements only
  bool half_turn{false};     // generator realized by nu_plus on the fan model
  bool linear{false};
  Mat2 matrix;
  int order{0};  // pointwise order; 0 = exceeds the cap (infinite in practice)
};

struct GroupDescriptor {
  enum Label { SL2Z, PSL2Z, ZxZ2, Z, Z5, Z4, Z3, Z2, Trivial, NotComputed };
  Label label{NotComputed};
  std::vector<GammaElement> generators;
  bool aut_conjectural{false};  // some-wrap cases: G = Aut is only conjectured
  std::string label_str() const {
    switch (label) {
      case SL2Z: return "SL2(Z)";
      case PSL2Z: return "PSL2(Z)";
      case ZxZ2: return "Z x| Z/2";
      case Z: return "Z";
      case Z5: return "Z/5";
      case Z4: return "Z/4";
      case Z3: return "Z/3";
      case Z2: return "Z/2";
      case Trivial: return "Trivial";
      case NotComputed: return "NotComputed";
    }
    return "?";
  }
};

namespace detail {
inline GroupDescriptor::Label table3_label(const KodairaVerdict& kv) {
  using L = GroupDescriptor;
  if (kv.some_wrap()) return L::Z;
  switch (kv.kind) {
    case KodairaVerdict::I: return sgn(kv.k) == 0 ? L::SL2Z : L::ZxZ2;
    case KodairaVerdict::II: return L::Z5;
    case KodairaVerdict::III: return L::Z3;
    case KodairaVerdict::IV: return L::Z4;
    case KodairaVerdict::Istar: return sgn(kv.k) == 0 ? L::PSL2Z : L::Z;
    case KodairaVerdict::IIstar: return L::Trivial;
    case KodairaVerdict::IIIstar: return L::Trivial;
    case KodairaVerdict::IVstar: return L::Z2;
    default: return L::NotComputed;
  }
}

// enumerate verified, pointwise-distinct, non-identity elements with
// mutation words up to the given length
inline std::vector<GammaElement> gamma_search(const Seed& S, int max_len,
                                              bool strict, size_t max_elems = 8) {
  std::vector<GammaElement> found;
  std::vector<std::vector<Vec2>> sigs;
  std::vector<int> nonfrozen;
  for (int i = 0; i < S.n; i++)
    if (!S.frozen[size_t(i)]) nonfrozen.push_back(i);
  if (S.n > 8) return found;  // permutation budget
  std::vector<int> perm(size_t(S.n));
  for (int i = 0; i < S.n; i++) perm[size_t(i)] = i;
  std::vector<std::vector<int>> perms;
  {
    std::vector<int> p = perm;
    std::sort(p.begin(), p.end());
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<std::vector<int>> words{{}};
  for (int len = 1; len <= max_len; len++) {
    std::vector<std::vector<int>> next;
    for (auto& w : words) {
      if (int(w.size()) != len - 1) continue;
      for (int j : nonfrozen) {
        if (!w.empty() && w.back() == j) continue;  // mutation is involutive
        auto w2 = w;
        w2.push_back(j);
        next.push_back(w2);
      }
    }
    words.insert(words.end(), next.begin(), next.end());
  }
  for (auto& w : words) {
    for (auto& h : perms) {
      if (w.empty()) {
        bool ident = true;
        for (int i = 0; i < S.n; i++) ident = ident && h[size_t(i)] == i;
        if (ident) continue;
      }
      GammaCheck chk;
      try {
        chk = verify_gamma_element(S, w, h, strict);
      } catch (const std::exception&) {
        continue;
      }
      if (!chk.ok) continue;
      if (detail::pointwise_identity(chk.action)) continue;
      auto sig = detail::images(chk.action);
      bool dup = false;
      for (auto& s : sigs) dup = dup || s == sig;
      if (dup) continue;
      sigs.push_back(sig);
      GammaElement el;
      el.word = w;
      el.relabel = h;
      el.action = chk.action;
      el.linear = chk.linear;
      el.matrix = chk.matrix;
      el.order = detail::pointwise_order(chk.action);
      found.push_back(el);
      if (found.size() >= max_elems) return found;
    }
  }
  return found;
}
}  // namespace detail

namespace detail {
// the half-turn nu_plus as a candidate generator: pointwise order on the
// sample set, and a plane matrix when the map happens to be linear
inline GammaElement half_turn_element(const FanModel& model, int cap = 12) {
  GammaElement e;
  e.half_turn = true;
  auto& pts = sample_points();
  std::vector<Vec2> cur(pts);
  for (int k = 1; k <= cap && e.order == 0; k++) {
    bool id = true;
    for (size_t i = 0; i < cur.size(); i++) {
      cur[i] = nu_plus(model, cur[i]);
      id = id && cur[i] == pts[i];
    }
    if (id) e.order = k;
  }
  Vec2 g1 = nu_plus(model, Vec2(1, 0));
  Vec2 g2 = nu_plus(model, Vec2(0, 1));
  Mat2 M(g1.x, g2.x, g1.y, g2.y);
  e.linear = true;
  for (auto& p : pts) e.linear = e.linear && M * p == nu_plus(model, p);
  if (e.linear) e.matrix = M;
  return e;
}
}  // namespace detail

// Generator word-length defaults per class; canonical models of every class
// need at most length 2. The cyclic (or Z) part is realized by the half-turn
// nu_plus; the remaining generators come from the mutation-word search.
inline GroupDescriptor modular_group(const Seed& S, const KodairaVerdict& kv,
                                     int search_len = 2, bool strict = false) {
  GroupDescriptor g;
  if (!kv.positive()) return g;
  g.label = detail::table3_label(kv);
  g.aut_conjectural = kv.some_wrap();
  if (search_len < 0) return g;  // label only
  GammaElement ht = detail::half_turn_element(fan_model_of(S));
  auto push_ht = [&](int want_order) {
    if (ht.order != want_order)
      throw std::logic_error("modular_group: half-turn order off its class");
    g.generators.push_back(ht);
  };
  auto pick = [&](const std::vector<GammaElement>& found, auto pred) {
    for (auto& e : found)
      if (pred(e)) {
        g.generators.push_back(e);
        return true;
      }
    return false;
  };
  switch (g.label) {
    case GroupDescriptor::Z5: push_ht(5); break;
    case GroupDescriptor::Z4: push_ht(4); break;
    case GroupDescriptor::Z3: push_ht(3); break;
    case GroupDescriptor::Z2: push_ht(2); break;
    case GroupDescriptor::Z: push_ht(0); break;
    case GroupDescriptor::ZxZ2: {
      push_ht(0);
      auto found = detail::gamma_search(S, search_len, strict);
      pick(found, [](const GammaElement& e) { return e.order == 2; });
      break;
    }
    case GroupDescriptor::PSL2Z: {
      auto found = detail::gamma_search(S, search_len, strict);
      pick(found, [](const GammaElement& e) { return e.order == 3; });
      pick(found, [](const GammaElement& e) { return e.order == 0; });
      break;
    }
    case GroupDescriptor::SL2Z: {
      // all-frozen models admit relabel-only elements at best
      for (auto& e : detail::gamma_search(S, search_len, strict))
        g.generators.push_back(e);
      break;
    }
    case GroupDescriptor::Trivial: {
      if (ht.order != 1)
        throw std::logic_error("modular_group: nontrivial half-turn in a trivial class");
      auto found = detail::gamma_search(S, search_len, strict);
      if (!found.empty())
        throw std::logic_error("modular_group: nontrivial element in a trivial class");
      break;
    }
    default:
      break;
  }
  return g;
}

// ---- classification report ----

struct ClassificationReport {
  enum ClassKind {
    NegativeDefinite,
    Semidefinite,
    FiniteType,
    AcyclicInfinite,
    PositiveNonAcyclic
  };
  ClassKind cls{FiniteType};
  Mat2 mu, mu_inv;
  KodairaVerdict kodaira;
  DefSign h_sig{DefSign::NotSemidefinite};
  AdeLabel q_type;
  bool q_negative_definite{false};
  std::optional<AdeLabel> q_eff;
  Int charge_value;
  bool acyclic{false}, finite_type{false};
  ClusterRegion region;
  GroupDescriptor modular;
  std::string class_str() const {
    switch (cls) {
      case NegativeDefinite: return "NegativeDefinite";
      case Semidefinite: return "SemidefiniteNotDefinite";
      case FiniteType: return "FiniteType(" + kodaira.str() + ")";
      case AcyclicInfinite: return "AcyclicInfinite(SomeWrap)";
      case PositiveNonAcyclic: return "PositiveNonAcyclic(" + kodaira.str() + ")";
    }
    return "?";
  }
  // the mutation/re-encoding invariant content (everything but the seed echo
  // and the non-canonical generator witnesses)
  std::string invariant_view() const {
    std::string s;
    s += "class=" + class_str();
    s += ";kodaira=" + kodaira.str();
    s += ";h=" + std::to_string(int(h_sig));
    s += ";q=" + q_type.str();
    s += ";qdef=" + std::to_string(q_negative_definite);
    s += ";qeff=" + (q_eff ? q_eff->str() : std::string("-"));
    s += ";charge=" + charge_value.get_str();
    s += ";acyclic=" + std::to_string(acyclic);
    s += ";finite=" + std::to_string(finite_type);
    s += ";region=" + region_kind(region);
    s += ";G=" + modular.label_str();
    return s;
  }
};

struct ClassifyOptions {
  int gamma_search_len{2};  // < 0: label only, no generator search
  bool strict_gamma{false};
};

inline void audit_fail(const std::string& a, const std::string& b) {
  throw std::logic_error("classification inconsistency: " + a + " vs " + b);
}

inline ClassificationReport classify(const Seed& S, const ClassifyOptions& opts = {}) {
  ClassificationReport r;
  FanModel model = fan_model_of(S);
  r.mu = monodromy(model);
  r.mu_inv = r.mu.inverse();
  // the three independent monodromy routes must agree exactly
  Mat2 m_fact = monodromy_from_factorization(fan_data_of(S));
  Mat2 m_mut = monodromy_via_mutations(S);
  if (!(m_fact == r.mu_inv)) audit_fail("developing-map monodromy", "factorization monodromy");
  if (!(m_mut == r.mu_inv)) audit_fail("developing-map monodromy", "mutation monodromy");
  r.kodaira = kodaira_identify(r.mu_inv);
  IntMatrix H = intersection_matrix(model);
  r.h_sig = h_signature(H);
  GramLattice Q = q_form(S);
  r.q_negative_definite = is_negative_definite(Q);
  r.q_type = ade_type(Q);
  r.charge_value = charge(model);
  Quiver qv = quiver_of(S);
  // the two per-seed acyclicity tests must agree; the reported flag is the
  // property of the whole mutation class (some seed acyclic)
  if (is_acyclic(qv) != is_acyclic_halfplane(S))
    audit_fail("quiver cycle test", "half-plane acyclicity test");
  // search the coprime form: fewest rays, and shared across re-encodings
  r.acyclic = has_acyclic_seed(make_coprime(S));
  r.finite_type = is_finite_type(S);
  r.q_eff = q_eff_decomposition(S);
  r.region = cluster_complex_region(model);
  // the equivalence audit (each criterion is computed independently above)
  bool positive = r.kodaira.positive();
  if (r.finite_type != r.kodaira.finite_type())
    audit_fail("Cartan finite-type test", "Kodaira verdict");
  if ((r.h_sig == DefSign::NotSemidefinite) != positive)
    audit_fail("H signature", "monodromy positivity");
  if (r.q_negative_definite != positive)
    audit_fail("Q definiteness", "monodromy positivity");
  if ((r.h_sig == DefSign::NegativeDefinite) !=
      (r.kodaira.reason == KodairaVerdict::Hyperbolic))
    audit_fail("H negative definite", "monodromy hyperbolic class");
  if ((r.h_sig == DefSign::SemidefiniteNotDefinite) !=
      (r.kodaira.reason == KodairaVerdict::SemidefiniteParabolic))
    audit_fail("H semidefinite", "monodromy semidefinite-parabolic class");
  if (positive) {
    bool region_nonempty = !std::holds_alternative<RegionEmpty>(r.region);
    if (r.acyclic != region_nonempty)
      audit_fail("quiver acyclicity", "cluster region");
    if (r.acyclic == r.kodaira.all_wrap())
      audit_fail("quiver acyclicity", "all-wrap Kodaira class");
  } else {
    if (!std::holds_alternative<RegionEmpty>(r.region))
      audit_fail("cluster region", "non-positive class");
    if (r.acyclic) audit_fail("mutation-class acyclicity", "non-positive class");
  }
  bool region_full = std::holds_alternative<RegionFullPlane>(r.region);
  if (region_full != r.kodaira.finite_type())
    audit_fail("full-plane cluster region", "finite-type Kodaira class");
  // primary verdict: keyed to the monodromy class
  if (r.kodaira.reason == KodairaVerdict::Hyperbolic)
    r.cls = ClassificationReport::NegativeDefinite;
  else if (r.kodaira.reason == KodairaVerdict::SemidefiniteParabolic)
    r.cls = ClassificationReport::Semidefinite;
  else if (r.kodaira.finite_type())
    r.cls = ClassificationReport::FiniteType;
  else if (r.kodaira.some_wrap())
    r.cls = ClassificationReport::AcyclicInfinite;
  else
    r.cls = ClassificationReport::PositiveNonAcyclic;
  r.modular = modular_group(S, r.kodaira, opts.gamma_search_len, opts.strict_gamma);
  return r;
}

inline ClassificationReport classify(const FanSeedSpec& spec,
                                     const ClassifyOptions& opts = {}) {
  return classify(seed_from_fan_spec(spec), opts);
}

}  // namespace lcy
