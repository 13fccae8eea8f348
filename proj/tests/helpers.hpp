#pragma once
// Shared test fixtures: canonical fan seeds, brute-force oracles, and a
// deterministic random seed generator.

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "lcy/classify.hpp"
#include "lcy/json_io.hpp"

namespace testutil {

using namespace lcy;

// triangle fan with blowup counts (a, b, c) on (1,0), (0,1), (-1,-1)
inline FanSeedSpec triangle(long a, long b, long c) {
  return {{{1, 0}, Int(a), a == 0}, {{0, 1}, Int(b), b == 0}, {{-1, -1}, Int(c), c == 0}};
}

inline Seed triangle_seed(long a, long b, long c) {
  return seed_from_fan_spec(triangle(a, b, c));
}

inline FanSeedSpec m05_fan() {
  return {{{1, 0}, 1, false},
          {{0, 1}, 0, true},
          {{-1, 1}, 0, true},
          {{-1, 0}, 0, true},
          {{0, -1}, 1, false}};
}

// brute-force SL2(Z) conjugator search with entries bounded by B
inline std::optional<Mat2> find_conjugator(const Mat2& M, const Mat2& N, long B = 6) {
  for (long a = -B; a <= B; a++)
    for (long b = -B; b <= B; b++)
      for (long c = -B; c <= B; c++) {
        // a*d - b*c = 1
        long num = 1 + b * c;
        if (a == 0) {
          if (num != 0) continue;
          for (long d = -B; d <= B; d++) {
            Mat2 P(a, b, c, d);
            if (P * M * P.inverse() == N) return P;
          }
          continue;
        }
        if (num % a != 0) continue;
        long d = num / a;
        if (d < -B || d > B) continue;
        Mat2 P(a, b, c, d);
        if (P * M * P.inverse() == N) return P;
      }
  return std::nullopt;
}

// Independent root-count oracle: enumerate x with x_i^2 <= 2 (A^{-1})_ii for
// the first n-1 coordinates (A = -G positive definite), and solve the final
// coordinate's quadratic exactly. All arithmetic in long (entries small).
inline long root_count_box_oracle(const GramLattice& g) {
  int n = g.rank();
  if (n == 0) return 0;
  // A^{-1} diagonal over rationals: solve A x = e_i
  IntMatrix A(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) A(i, j) = -g.gram(i, j);
  std::vector<long> bound(static_cast<size_t>(n));
  for (int i = 0; i < n; i++) {
    std::vector<Int> e(static_cast<size_t>(n), Int(0));
    e[size_t(i)] = 1;
    auto x = solve_rational(A, e);
    REQUIRE(x.has_value());
    Rat lim = (*x)[size_t(i)] * 2;  // x_i^2 <= 2 (A^{-1})_ii
    long b = 0;
    while (Rat((b + 1)) * (b + 1) <= lim) b++;
    bound[size_t(i)] = b;
  }
  std::vector<long> a(size_t(n) * size_t(n));
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) a[size_t(i) * size_t(n) + size_t(j)] = A(i, j).get_si();
  // pruning: with the prefix x_0..x_{j-1} fixed, the minimum of the form over
  // the free suffix is prefix^T (A_pp - A_ps A_ss^{-1} A_sp) prefix, so any
  // prefix whose Schur-complement value exceeds 2 can be discarded
  std::vector<std::vector<std::vector<Rat>>> schur(static_cast<size_t>(n));
  for (int j = 1; j < n; j++) {
    int s = n - j;
    IntMatrix Ass(s, s);
    for (int r = 0; r < s; r++)
      for (int c = 0; c < s; c++) Ass(r, c) = A(j + r, j + c);
    std::vector<std::vector<Rat>> X(static_cast<size_t>(j));  // cols: A_ss^{-1} A_sp
    for (int p = 0; p < j; p++) {
      std::vector<Int> col(static_cast<size_t>(s));
      for (int r = 0; r < s; r++) col[size_t(r)] = A(j + r, p);
      auto sol = solve_rational(Ass, col);
      REQUIRE(sol.has_value());
      X[size_t(p)] = *sol;
    }
    auto& B = schur[size_t(j)];
    B.assign(size_t(j), std::vector<Rat>(size_t(j), Rat(0)));
    for (int p = 0; p < j; p++)
      for (int q = 0; q < j; q++) {
        Rat acc(A(p, q));
        for (int r = 0; r < s; r++) acc -= Rat(A(p, j + r)) * X[size_t(q)][size_t(r)];
        B[size_t(p)][size_t(q)] = acc;
      }
  }
  std::vector<long> x(static_cast<size_t>(n), 0);
  long count = 0;
  // recurse over x_0..x_{n-2}; x_{n-1} from its quadratic equation
  std::function<void(int)> rec = [&](int lvl) {
    if (lvl >= 1 && lvl < n) {
      Rat acc(0);
      auto& B = schur[size_t(lvl)];
      for (int p = 0; p < lvl; p++)
        for (int q = 0; q < lvl; q++)
          acc += B[size_t(p)][size_t(q)] * Rat(x[size_t(p)] * x[size_t(q)]);
      if (acc > Rat(2)) return;
    }
    if (lvl == n - 1) {
      // q(x) = qa t^2 + qb t + qc == 2 in t = x_{n-1}
      long qa = a[size_t(n - 1) * size_t(n) + size_t(n - 1)];
      long qb = 0, qc = 0;
      for (int i = 0; i < n - 1; i++) {
        qb += 2 * a[size_t(i) * size_t(n) + size_t(n - 1)] * x[size_t(i)];
        for (int j = 0; j < n - 1; j++)
          qc += a[size_t(i) * size_t(n) + size_t(j)] * x[size_t(i)] * x[size_t(j)];
      }
      long disc = qb * qb - 4 * qa * (qc - 2);
      if (disc < 0) return;
      long s = 0;
      while (s * s < disc) s++;
      if (s * s != disc) return;
      for (long sign : {-s, s}) {
        long num = -qb + sign;
        if (num % (2 * qa) == 0) count++;
        if (sign == 0) break;  // double root counted once
      }
      return;
    }
    for (long t = -bound[size_t(lvl)]; t <= bound[size_t(lvl)]; t++) {
      x[size_t(lvl)] = t;
      rec(lvl + 1);
    }
    x[size_t(lvl)] = 0;
  };
  if (n == 1) {
    // single coordinate: q = a t^2 == 2
    long qa = a[0];
    count = (2 % qa == 0 && [&] {
              long v = 2 / qa;
              long s = 0;
              while (s * s < v) s++;
              return s * s == v;
            }())
                ? 2
                : 0;
  } else {
    rec(0);
  }
  return count;
}

// deterministic random fan spec: <= max_rays rays, k_i <= max_k
inline FanSeedSpec random_fan(std::mt19937& rng, int max_rays = 6, int max_k = 4) {
  std::uniform_int_distribution<int> nray(1, max_rays);
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> kdist(0, max_k);
  while (true) {
    int n = nray(rng);
    FanSeedSpec spec;
    bool ok = true;
    for (int i = 0; i < n; i++) {
      Vec2 u(coord(rng), coord(rng));
      if (u.is_zero()) {
        ok = false;
        break;
      }
      u = primitive(u);
      bool dup = false;
      for (auto& r : spec) dup = dup || r.u == u;
      if (dup) continue;
      Int k(kdist(rng));
      spec.push_back({u, k, sgn(k) == 0});
    }
    if (!ok || spec.empty()) continue;
    bool any_blowup = false;
    for (auto& r : spec) any_blowup = any_blowup || sgn(r.k) > 0;
    if (!any_blowup) continue;
    return spec;
  }
}

// random rank-2 seed: a random fan seed pushed through a random mutation word
inline Seed random_seed(std::mt19937& rng, int word_len = 0) {
  Seed S = seed_from_fan_spec(random_fan(rng));
  std::vector<int> nonfrozen;
  for (int i = 0; i < S.n; i++)
    if (!S.frozen[size_t(i)]) nonfrozen.push_back(i);
  std::uniform_int_distribution<size_t> pick(0, nonfrozen.size() - 1);
  for (int t = 0; t < word_len; t++) S = mutate(S, nonfrozen[pick(rng)]);
  return S;
}

}  // namespace testutil
