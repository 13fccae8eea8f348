#pragma once
// JSON encoding of seeds, fan specs, and classification reports. Output is
// canonical: nlohmann::json keeps object keys sorted.

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "lcy/classify.hpp"

namespace lcy {

using json = nlohmann::json;

inline json json_of_int(const Int& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

inline Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected an integer");
}

inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<long>()));
  if (j.is_string()) return rat_from_str(j.get<std::string>());
  throw std::invalid_argument("expected a rational as \"p/q\" or an integer");
}

// ---- seeds ----

inline json seed_to_json(const Seed& S) {
  json j;
  j["skew"] = json::array();
  j["d"] = json::array();
  j["frozen"] = json::array();  // 1-based frozen indices
  for (int i = 0; i < S.n; i++) {
    json row = json::array();
    for (int k = 0; k < S.n; k++) row.push_back(rat_str(S.skew(i, k)));
    j["skew"].push_back(row);
    j["d"].push_back(rat_str(S.d[size_t(i)]));
    if (S.frozen[size_t(i)]) j["frozen"].push_back(i + 1);
  }
  bool ident = S.basis_coords == IntMatrix::identity(S.n);
  if (!ident) {
    j["basis"] = json::array();
    for (int i = 0; i < S.n; i++) {
      json row = json::array();
      for (int k = 0; k < S.n; k++) row.push_back(json_of_int(S.basis_coords(i, k)));
      j["basis"].push_back(row);
    }
  }
  return j;
}

inline Seed seed_from_json(const json& j) {
  if (!j.contains("skew") || !j.contains("d") || !j.contains("frozen"))
    throw std::invalid_argument("seed: need \"skew\", \"d\", \"frozen\"");
  Seed S;
  S.n = int(j["d"].size());
  S.skew = RatMatrix(S.n, S.n);
  S.d.resize(size_t(S.n));
  S.frozen.resize(size_t(S.n));
  if (int(j["skew"].size()) != S.n)
    throw std::invalid_argument("seed: inconsistent sizes");
  for (int i = 0; i < S.n; i++) {
    if (int(j["skew"][size_t(i)].size()) != S.n)
      throw std::invalid_argument("seed: skew not square");
    for (int k = 0; k < S.n; k++)
      S.skew(i, k) = rat_from_json(j["skew"][size_t(i)][size_t(k)]);
    S.d[size_t(i)] = rat_from_json(j["d"][size_t(i)]);
    S.frozen[size_t(i)] = false;
  }
  for (auto& f : j["frozen"]) {
    long idx = f.get<long>();  // 1-based
    if (idx < 1 || idx > S.n) throw std::invalid_argument("seed: frozen index out of range");
    S.frozen[size_t(idx - 1)] = true;
  }
  S.basis_coords = IntMatrix::identity(S.n);
  if (j.contains("basis")) {
    for (int i = 0; i < S.n; i++)
      for (int k = 0; k < S.n; k++)
        S.basis_coords(i, k) = int_from_json(j["basis"][size_t(i)][size_t(k)]);
  }
  S.validate();
  return S;
}

// ---- fan specs ----

inline json fan_spec_to_json(const FanSeedSpec& spec) {
  json rays = json::array();
  for (auto& r : spec) {
    json jr;
    jr["u"] = json::array({json_of_int(r.u.x), json_of_int(r.u.y)});
    jr["k"] = json_of_int(r.k);
    jr["frozen"] = r.frozen;
    rays.push_back(jr);
  }
  return json{{"rays", rays}};
}

inline FanSeedSpec fan_spec_from_json(const json& j) {
  if (!j.contains("rays")) throw std::invalid_argument("fan spec: need \"rays\"");
  FanSeedSpec out;
  for (auto& jr : j["rays"]) {
    RaySpec r;
    if (!jr.contains("u") || jr["u"].size() != 2)
      throw std::invalid_argument("fan spec: each ray needs \"u\": [a, b]");
    r.u = {int_from_json(jr["u"][0]), int_from_json(jr["u"][1])};
    r.k = jr.contains("k") ? int_from_json(jr["k"]) : Int(0);
    r.frozen = jr.contains("frozen") ? jr["frozen"].get<bool>() : sgn(r.k) == 0;
    out.push_back(r);
  }
  return out;
}

// ---- report pieces ----

inline json mat2_to_json(const Mat2& m) {
  return json::array({json::array({json_of_int(m.a), json_of_int(m.b)}),
                      json::array({json_of_int(m.c), json_of_int(m.d)})});
}

inline json vec2_to_json(const Vec2& v) {
  return json::array({json_of_int(v.x), json_of_int(v.y)});
}

inline json surd_to_json(const SurdVal& s) {
  return json{{"rat", rat_str(s.a)}, {"surd_coeff", rat_str(s.b)}};
}

inline json region_to_json(const ClusterRegion& r) {
  json j;
  j["kind"] = region_kind(r);
  if (auto* c = std::get_if<RegionConeBetweenEigenrays>(&r)) {
    j["D"] = json_of_int(c->l1.D);
    j["eigenray1"] = json::array({surd_to_json(c->l1.x), surd_to_json(c->l1.y)});
    j["eigenray2"] = json::array({surd_to_json(c->l2.x), surd_to_json(c->l2.y)});
  }
  if (auto* s = std::get_if<RegionSingleRayComplement>(&r))
    j["excluded_ray"] = vec2_to_json(s->ray);
  return j;
}

inline json gamma_element_to_json(const GammaElement& e) {
  json j;
  if (e.half_turn) {
    j["kind"] = "half-turn";
  } else {
    j["kind"] = "mutation-word";
    json w = json::array();
    for (int x : e.word) w.push_back(x + 1);  // 1-based for display
    j["word"] = w;
    json h = json::array();
    for (int x : e.relabel) h.push_back(x + 1);
    j["relabel"] = h;
  }
  j["order"] = e.order == 0 ? json("infinite") : json(e.order);
  if (e.linear) j["matrix"] = mat2_to_json(e.matrix);
  return j;
}

inline json report_to_json(const ClassificationReport& r) {
  json j;
  j["class"] = r.class_str();
  j["kodaira"] = r.kodaira.str();
  j["monodromy"] = {{"mu", mat2_to_json(r.mu)},
                    {"mu_inverse", mat2_to_json(r.mu_inv)},
                    {"conjugacy", conj_str(sl2_conjugacy(r.mu_inv))}};
  j["charge"] = json_of_int(r.charge_value);
  switch (r.h_sig) {
    case DefSign::NegativeDefinite: j["h_signature"] = "NegativeDefinite"; break;
    case DefSign::SemidefiniteNotDefinite:
      j["h_signature"] = "SemidefiniteNotDefinite";
      break;
    case DefSign::NotSemidefinite: j["h_signature"] = "NotSemidefinite"; break;
  }
  j["q"] = {{"negative_definite", r.q_negative_definite}, {"ade", r.q_type.str()}};
  if (r.q_eff) j["q_effective"] = r.q_eff->str();
  j["quiver"] = {{"acyclic", r.acyclic}, {"finite_type", r.finite_type}};
  j["cluster_region"] = region_to_json(r.region);
  json gens = json::array();
  for (auto& e : r.modular.generators) gens.push_back(gamma_element_to_json(e));
  j["modular_group"] = {{"label", r.modular.label_str()},
                        {"generators", gens},
                        {"conjectural", r.modular.aut_conjectural}};
  return j;
}

}  // namespace lcy
