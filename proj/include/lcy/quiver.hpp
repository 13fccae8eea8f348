#pragma once
// Quivers of seeds, acyclicity (graph test + rank-2 half-plane test), and
// the finite-type Cartan criterion.

#include <functional>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcy/seed.hpp"

namespace lcy {

struct Quiver {
  std::vector<Rat> d;
  std::vector<bool> frozen;
  IntMatrix arrows;  // antisymmetric; skew scaled integral for display
};

inline Quiver quiver_of(const Seed& S) {
  // scale the skew form by the lcm of denominators (display-only rescale)
  Int L(1);
  for (auto& x : S.skew.a) {
    Rat c = x;
    c.canonicalize();
    L = L / gcd(L, c.get_den()) * c.get_den();
  }
  Quiver q;
  q.d = S.d;
  q.frozen = S.frozen;
  q.arrows = IntMatrix(S.n, S.n);
  for (int i = 0; i < S.n; i++)
    for (int j = 0; j < S.n; j++) {
      Rat v = S.skew(i, j) * L;
      v.canonicalize();
      q.arrows(i, j) = v.get_num();
    }
  return q;
}

// no directed cycle avoiding frozen vertices (arrow i -> j iff arrows_ij > 0)
inline bool is_acyclic(const Quiver& q) {
  int n = q.arrows.rows;
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  // iterative DFS over the non-frozen subquiver
  std::function<bool(int)> dfs = [&](int u) -> bool {
    state[u] = 1;
    for (int v = 0; v < n; v++) {
      if (q.frozen[v] || sgn(q.arrows(u, v)) <= 0) continue;
      if (state[v] == 1) return false;
      if (state[v] == 0 && !dfs(v)) return false;
    }
    state[u] = 2;
    return true;
  };
  for (int u = 0; u < n; u++)
    if (!q.frozen[u] && state[u] == 0 && !dfs(u)) return false;
  return true;
}

// rank-2 equivalent: all non-frozen plane images lie in a closed half-plane
inline bool is_acyclic_halfplane(const Seed& S) {
  Nbar2 nb = nbar2_coords(S);
  std::vector<Vec2> dirs;
  for (int i = 0; i < S.n; i++) {
    if (S.frozen[i] || nb.v[i].is_zero()) continue;
    Vec2 u = primitive(nb.v[i]);
    bool dup = false;
    for (auto& x : dirs) dup = dup || x == u;
    if (!dup) dirs.push_back(u);
  }
  if (dirs.size() <= 1) return true;
  // sort counterclockwise, starting from the positive x-axis
  auto half = [](const Vec2& u) {
    return (sgn(u.y) > 0 || (sgn(u.y) == 0 && sgn(u.x) > 0)) ? 0 : 1;
  };
  std::stable_sort(dirs.begin(), dirs.end(), [&](const Vec2& p, const Vec2& q) {
    if (half(p) != half(q)) return half(p) < half(q);
    return sgn(wedge(p, q)) > 0;
  });
  // some cyclic gap must be >= pi
  for (size_t i = 0; i < dirs.size(); i++) {
    const Vec2& cur = dirs[i];
    const Vec2& nxt = dirs[(i + 1) % dirs.size()];
    if (sgn(wedge(cur, nxt)) <= 0) return true;
  }
  return false;
}

// Acyclicity of the mutation class: search for any mutation-equivalent seed
// passing the half-plane test. A success is a certificate. Smallest-coordinate
// states are explored first, so the walk heads back toward the compact part
// of the class before fanning out; the state cap keeps exhaustion on classes
// with no acyclic seed cheap, and acyclic classes yield a certificate within
// a few steps of it.
inline bool has_acyclic_seed(const Seed& S0, size_t max_states = 2000) {
  auto key = [](const Seed& s) {
    FanSeedSpec fd = fan_data_of(s);
    std::vector<std::string> parts;
    for (auto& r : fd)
      parts.push_back(r.u.x.get_str() + "," + r.u.y.get_str() + "," +
                      r.k.get_str() + "," + (r.frozen ? "f" : "m"));
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (auto& p : parts) out += p + ";";
    return out;
  };
  auto weight = [](const Seed& s) {
    FanSeedSpec fd = fan_data_of(s);
    size_t w = 0;
    for (auto& r : fd)
      w += mpz_sizeinbase(r.u.x.get_mpz_t(), 2) +
           mpz_sizeinbase(r.u.y.get_mpz_t(), 2);
    return w;
  };
  using Entry = std::pair<size_t, Seed>;
  auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> q(cmp);
  std::set<std::string> seen;
  q.push({weight(S0), S0});
  seen.insert(key(S0));
  // every visited state is mutation-equivalent to the start, so the verdict
  // is shared by all of them; the memo makes repeat queries on a class (or
  // any seed visited while settling it) immediate
  static std::map<std::string, bool> memo;
  if (auto it = memo.find(key(S0)); it != memo.end()) return it->second;
  bool found = is_acyclic_halfplane(S0);
  while (!found && !q.empty() && seen.size() < max_states) {
    Seed s = q.top().second;
    q.pop();
    for (int i = 0; i < s.n; i++) {
      if (s.frozen[size_t(i)]) continue;
      Seed m = mutate(s, i);
      if (!seen.insert(key(m)).second) continue;
      if (is_acyclic_halfplane(m)) { found = true; break; }
      q.push({weight(m), m});
    }
  }
  for (auto& k : seen) memo[k] = found;
  return found;
}

// positive definiteness of the symmetrized Cartan companion on the
// non-frozen indices: C_ij = 2 d_i delta_ij - d_i |eps_ij| (symmetric)
inline bool is_finite_type(const Seed& S) {
  IntMatrix eps = S.epsilon();
  std::vector<int> idx;
  for (int i = 0; i < S.n; i++)
    if (!S.frozen[i]) idx.push_back(i);
  int r = int(idx.size());
  if (r == 0) return true;
  // clear denominators: positive rescale preserves definiteness
  Int L(1);
  for (int i : idx) {
    Rat c = S.d[size_t(i)];
    c.canonicalize();
    L = L / gcd(L, c.get_den()) * c.get_den();
  }
  IntMatrix C(r, r);
  for (int p = 0; p < r; p++)
    for (int q = 0; q < r; q++) {
      Rat v = S.d[size_t(idx[p])] * L;
      Rat entry = p == q ? Rat(v * 2) : Rat(-v * Rat(abs(eps(idx[p], idx[q]))));
      entry.canonicalize();
      if (entry.get_den() != 1) throw std::logic_error("cartan: non-integral");
      C(p, q) = entry.get_num();
    }
  // Sylvester: all leading principal minors positive
  for (int t = 1; t <= r; t++) {
    IntMatrix m(t, t);
    for (int i = 0; i < t; i++)
      for (int j = 0; j < t; j++) m(i, j) = C(i, j);
    if (sgn(det(m)) <= 0) return false;
  }
  return true;
}

inline std::string quiver_dot(const Quiver& q) {
  std::string s = "digraph quiver {\n";
  int n = q.arrows.rows;
  for (int i = 0; i < n; i++) {
    s += "  v" + std::to_string(i + 1) + " [label=\"" + std::to_string(i + 1) +
         " (d=" + rat_str(q.d[size_t(i)]) + ")\"";
    if (q.frozen[i]) s += " shape=box";
    s += "];\n";
  }
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++)
      if (sgn(q.arrows(i, j)) > 0)
        for (Int t(0); t < q.arrows(i, j); t += 1)
          s += "  v" + std::to_string(i + 1) + " -> v" + std::to_string(j + 1) + ";\n";
  s += "}\n";
  return s;
}

}  // namespace lcy
