#pragma once
// Boundary intersection matrix H, charge, and the canonical intersection
// form Q on the kernel K_2 (with its ADE identification).

#include <optional>
#include <stdexcept>
#include <vector>

#include "lcy/fan.hpp"
#include "lcy/gram.hpp"
#include "lcy/quiver.hpp"

namespace lcy {

// diagonal = self-intersections a_i; off-diagonal 1 for cyclically adjacent
inline IntMatrix intersection_matrix(const FanModel& m) {
  int n = m.n();
  if (n < 3) throw std::invalid_argument("intersection_matrix: need >= 3 rays");
  IntMatrix H(n, n);
  for (int i = 0; i < n; i++) {
    H(i, i) = m.a[size_t(i)];
    H(i, (i + 1) % n) += 1;
    H((i + 1) % n, i) += 1;
  }
  if (n == 3) {
    // all pairs are adjacent exactly once in a 3-cycle
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++)
        if (i != j) H(i, j) = 1;
  }
  return H;
}

// c = 12 - 3n - Tr(H); always equals the total blowup count
inline Int charge(const FanModel& m) {
  IntMatrix H = intersection_matrix(m);
  Int tr(0);
  for (int i = 0; i < m.n(); i++) tr += H(i, i);
  Int c = 12 - 3 * Int(m.n()) - tr;
  Int ksum(0);
  for (auto& x : m.k) ksum += x;
  if (c != ksum) throw std::logic_error("charge: formula disagrees with blowup count");
  return c;
}

inline DefSign h_signature(const IntMatrix& H) { return definiteness(H); }

// The canonical form Q on K_2, computed through the toric model of the
// maximally factored seed: Q(u1,u2) = iota(u1) . iota(u2) with
// iota(sum a_i e_i) = C - sum_{i non-frozen} a_i E_i, where C is the unique
// toric curve class meeting each boundary divisor in the prescribed total.
inline GramLattice q_form(const Seed& S_in) {
  Seed S = maximally_factor(S_in);
  FanSeedSpec data = fan_data_of(S);
  // toric model: the distinct ray directions, all blowup counts dropped
  FanSeedSpec toric_spec;
  for (auto& r : data) {
    bool dup = false;
    for (auto& t : toric_spec) dup = dup || t.u == r.u;
    if (!dup) toric_spec.push_back({r.u, 0, true});
  }
  FanModel toric = normalize_fan(toric_spec);
  int m = toric.n();
  // intersection form on toric boundary divisors
  IntMatrix HT(m, m);
  for (int i = 0; i < m; i++) {
    HT(i, i) = toric.a_toric[size_t(i)];
    HT(i, (i + 1) % m) += 1;
    HT((i + 1) % m, i) += 1;
  }
  // which toric ray each seed index sits on
  std::vector<int> ray_of(size_t(S.n), -1);
  for (int i = 0; i < S.n; i++) {
    for (int j = 0; j < m; j++)
      if (toric.rays[size_t(j)] == data[size_t(i)].u) ray_of[size_t(i)] = j;
    if (ray_of[size_t(i)] < 0) throw std::logic_error("q_form: ray not found");
  }
  // K2 here: kernel vectors supported on the non-frozen indices (the frozen
  // basis vectors carry no exceptional classes and lie outside D-perp)
  std::vector<int> nf;
  for (int i = 0; i < S.n; i++)
    if (!S.frozen[size_t(i)]) nf.push_back(i);
  IntMatrix eps = S.epsilon();
  IntMatrix A(S.n, int(nf.size()));
  for (int j = 0; j < S.n; j++)
    for (size_t t = 0; t < nf.size(); t++) A(j, int(t)) = eps(j, nf[t]);
  std::vector<std::vector<Int>> K2;
  for (auto& v : kernel_basis(A)) {
    std::vector<Int> full(size_t(S.n), Int(0));
    for (size_t t = 0; t < nf.size(); t++) full[size_t(nf[t])] = v[t];
    K2.push_back(std::move(full));
  }
  int r = int(K2.size());
  // for each kernel vector: solve HT x = b, b_i = sum of coefficients on ray i
  std::vector<std::vector<Rat>> cls;
  std::vector<std::vector<Int>> bs;
  cls.resize(size_t(r));
  bs.resize(size_t(r));
  for (int t = 0; t < r; t++) {
    std::vector<Int> b(size_t(m), Int(0));
    for (int i = 0; i < S.n; i++) b[size_t(ray_of[size_t(i)])] += K2[size_t(t)][size_t(i)];
    auto x = solve_rational(HT, b);
    if (!x) throw std::logic_error("q_form: no curve class with prescribed degrees");
    cls[size_t(t)] = *x;
    bs[size_t(t)] = b;
  }
  // Q(t,s) = x_t . (HT x_s) - sum_{i non-frozen} a_i(t) a_i(s)
  IntMatrix Q(r, r);
  for (int t = 0; t < r; t++)
    for (int s = 0; s < r; s++) {
      Rat acc(0);
      for (int i = 0; i < m; i++) acc += cls[size_t(t)][size_t(i)] * Rat(bs[size_t(s)][size_t(i)]);
      for (int i = 0; i < S.n; i++)
        if (!S.frozen[size_t(i)])
          acc -= Rat(K2[size_t(t)][size_t(i)]) * Rat(K2[size_t(s)][size_t(i)]);
      acc.canonicalize();
      if (acc.get_den() != 1) throw std::logic_error("q_form: non-integral pairing");
      Q(t, s) = acc.get_num();
    }
  return GramLattice{Q};
}

// acyclic case: Q restricted to the effective cone side decomposes as
// A_{d'_1 - 1} + ... + A_{d'_m - 1} over the coprime seed's non-frozen d'
inline std::optional<AdeLabel> q_eff_decomposition(const Seed& S) {
  if (!is_acyclic(quiver_of(S))) return std::nullopt;
  Seed C = make_coprime(S);
  Nbar2 nb = nbar2_coords(C);
  AdeLabel out{true, {}};
  for (int i = 0; i < C.n; i++) {
    if (C.frozen[size_t(i)]) continue;
    Int dp = nb.dprime[size_t(i)];
    if (dp > 1) out.blocks.push_back(AdeBlock{'A', int(dp.get_si()) - 1});
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

}  // namespace lcy
