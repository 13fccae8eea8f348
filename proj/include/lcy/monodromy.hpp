#pragma once
// Monodromy via unipotent factorizations and seed mutation, plus the
// Kodaira-type decision tree on the SL2(Z) conjugacy class of mu^{-1}.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lcy/fan.hpp"

namespace lcy {

// mu_v^{-k} for v = (a,b): u -> u - k (u ^ v) v
inline Mat2 unipotent_factor(const Vec2& v, const Int& k) {
  if (v.is_zero()) throw std::invalid_argument("unipotent_factor: zero vector");
  const Int &a = v.x, &b = v.y;
  return {1 - k * a * b, k * a * a, -k * b * b, 1 + k * a * b};
}

namespace detail {
// each ray of the normalized model in the coordinates of the base chart
// (v_1, v_2), i.e. the same basis the developing map uses
inline std::vector<Vec2> rays_in_base_chart(const FanModel& m) {
  Mat2 basis(m.rays[0].x, m.rays[1].x, m.rays[0].y, m.rays[1].y);
  Mat2 inv = basis.inverse();
  std::vector<Vec2> out;
  for (auto& r : m.rays) out.push_back(inv * r);
  return out;
}
}  // namespace detail

// mu^{-1} = mu_{v_s}^{-k_s} ... mu_{v_1}^{-k_1}, with each factor taken at
// the ray's developing image (the factorization lives on the universal
// cover, where consecutive rays develop to consecutive cones).
inline Mat2 monodromy_from_factorization(const FanSeedSpec& factors) {
  // a fan spec is a set of rays; sort them counterclockwise around the first
  // one so the factor order matches the cone order of the cover
  FanSeedSpec sorted = factors;
  if (!sorted.empty())
    std::stable_sort(sorted.begin() + 1, sorted.end(),
                     [&](const RaySpec& p, const RaySpec& q) {
                       int cp = detail::ang_class(sorted[0].u, p.u);
                       int cq = detail::ang_class(sorted[0].u, q.u);
                       if (cp != cq) return cp < cq;
                       return sgn(wedge(p.u, q.u)) > 0;
                     });
  FanModel m = normalize_fan(sorted);
  DevelopingMap dev(m);
  Mat2 acc = Mat2::identity();
  for (int i = 0; i < m.n(); i++) {
    if (sgn(m.k[i]) == 0) continue;
    acc = unipotent_factor(dev.image(0, i), m.k[i]) * acc;
  }
  return acc;
}

// Fixed-seed product: mu^{-1} = M(u_2) M(u_3) ... M(u_s) M(u_1) in base-chart
// coordinates (the base-ray factor is applied first).
inline Mat2 monodromy_mutation_product(const FanModel& m) {
  auto u = detail::rays_in_base_chart(m);
  int n = m.n();
  Mat2 acc = unipotent_factor(u[0], m.k[0]);
  for (int i = n - 1; i >= 1; i--)
    acc = unipotent_factor(u[size_t(i)], m.k[size_t(i)]) * acc;
  return acc;
}

// Sequential pushforward form: process v_1, then v_s, ..., v_2, transporting
// each direction through the transformations so far; yields mu directly.
inline Mat2 monodromy_pushforward(const FanModel& m) {
  auto u = detail::rays_in_base_chart(m);
  int n = m.n();
  Mat2 T = Mat2::identity();
  auto step = [&](int i) {
    Vec2 ab = T * u[size_t(i)];
    const Int &a = ab.x, &b = ab.y, &k = m.k[size_t(i)];
    Mat2 F(1 + k * a * b, -k * a * a, k * b * b, 1 - k * a * b);
    T = F * T;
  };
  step(0);
  for (int i = n - 1; i >= 1; i--) step(i);
  return T;
}

// both mutation-based forms, asserted equal; returns mu^{-1}
inline Mat2 monodromy_via_mutations(const Seed& S) {
  FanModel m = fan_model_of(S);
  Mat2 route1 = monodromy_mutation_product(m);
  Mat2 route2 = monodromy_pushforward(m).inverse();
  if (!(route1 == route2))
    throw std::logic_error("monodromy_via_mutations: the two forms disagree");
  return route1;
}

// ---- Kodaira identification ----

struct KodairaVerdict {
  enum Kind { I, Istar, II, IIstar, III, IIIstar, IV, IVstar, NotKodaira };
  enum Reason { None, Hyperbolic, SemidefiniteParabolic, SomeWrapParabolic,
                SomeWrapHyperbolic };
  Kind kind{NotKodaira};
  Int k{0};  // for I / Istar
  Reason reason{None};
  bool operator==(const KodairaVerdict& o) const {
    return kind == o.kind && k == o.k && reason == o.reason;
  }
  bool finite_type() const {
    return kind == I || kind == II || kind == III || kind == IV;
  }
  bool all_wrap() const {
    return kind == Istar || kind == IIstar || kind == IIIstar || kind == IVstar;
  }
  bool some_wrap() const {
    return reason == SomeWrapParabolic || reason == SomeWrapHyperbolic;
  }
  bool positive() const {
    return finite_type() || all_wrap() || some_wrap();
  }
  std::string str() const {
    switch (kind) {
      case I: return "I" + k.get_str();
      case Istar: return "I" + k.get_str() + "*";
      case II: return "II";
      case IIstar: return "II*";
      case III: return "III";
      case IIIstar: return "III*";
      case IV: return "IV";
      case IVstar: return "IV*";
      case NotKodaira:
        switch (reason) {
          case Hyperbolic: return "NotKodaira(NegativeDefinite)";
          case SemidefiniteParabolic: return "NotKodaira(Semidefinite)";
          case SomeWrapParabolic: return "NotKodaira(SomeWrapParabolic)";
          case SomeWrapHyperbolic: return "NotKodaira(SomeWrapHyperbolic)";
          default: return "NotKodaira";
        }
    }
    return "?";
  }
};

// Branch signs below were calibrated by computing mu^{-1} for the canonical
// triangle models of the two reference tables through the developing map.
inline KodairaVerdict kodaira_identify(const Mat2& m_inv) {
  if (m_inv.det() != 1) throw std::invalid_argument("kodaira_identify: det != 1");
  ConjClass c = sl2_conjugacy(m_inv);
  KodairaVerdict v;
  if (std::holds_alternative<ConjIdentity>(c)) {
    v.kind = KodairaVerdict::I;
    v.k = 0;
  } else if (auto* p = std::get_if<ConjParabolic>(&c)) {
    if (sgn(p->k) > 0) {
      v.kind = KodairaVerdict::I;
      v.k = p->k;
    } else {
      v.reason = KodairaVerdict::SemidefiniteParabolic;
    }
  } else if (std::holds_alternative<ConjNegIdentity>(c)) {
    v.kind = KodairaVerdict::Istar;
    v.k = 0;
  } else if (auto* np = std::get_if<ConjNegParabolic>(&c)) {
    if (sgn(np->k) < 0) {
      v.kind = KodairaVerdict::Istar;
      v.k = -np->k;
    } else {
      v.reason = KodairaVerdict::SomeWrapParabolic;
    }
  } else if (auto* e = std::get_if<ConjElliptic>(&c)) {
    bool star = e->rotation_sign > 0;
    if (e->trace == 1) v.kind = star ? KodairaVerdict::IIstar : KodairaVerdict::II;
    if (e->trace == 0) v.kind = star ? KodairaVerdict::IIIstar : KodairaVerdict::III;
    if (e->trace == -1) v.kind = star ? KodairaVerdict::IVstar : KodairaVerdict::IV;
  } else {
    auto& h = std::get<ConjHyperbolic>(c);
    v.reason = h.trace > 2 ? KodairaVerdict::Hyperbolic
                           : KodairaVerdict::SomeWrapHyperbolic;
  }
  return v;
}

}  // namespace lcy
