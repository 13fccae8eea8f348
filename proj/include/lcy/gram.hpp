#pragma once
// Symmetric integer Gram lattices: definiteness tests, exact root counting,
// ADE recognition by (rank, |det|, root count) on indecomposable blocks.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcy/intmatrix.hpp"

namespace lcy {

struct GramLattice {
  IntMatrix gram;  // symmetric
  int rank() const { return gram.rows; }
};

// Sylvester: negative definite iff (-1)^k * (leading principal k-minor) > 0.
inline bool is_negative_definite(const GramLattice& g) {
  int n = g.rank();
  for (int k = 1; k <= n; k++) {
    IntMatrix m(k, k);
    for (int i = 0; i < k; i++)
      for (int j = 0; j < k; j++) m(i, j) = g.gram(i, j);
    Int d = det(m);
    if ((k % 2 == 1 && sgn(d) >= 0) || (k % 2 == 0 && sgn(d) <= 0)) return false;
  }
  return true;
}

// Sums of principal k-minors of A, via the characteristic polynomial
// (Faddeev-LeVerrier over exact rationals): det(xI - A) = sum (-1)^k s_k x^{n-k}.
inline std::vector<Rat> principal_minor_sums(const IntMatrix& A) {
  int n = A.rows;
  std::vector<std::vector<Rat>> B(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; i++) B[i][i] = 1;  // B_0 = I
  std::vector<Rat> s(n + 1);
  s[0] = 1;
  Rat ck(1);
  for (int k = 1; k <= n; k++) {
    // B <- A * B
    std::vector<std::vector<Rat>> C(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; i++)
      for (int l = 0; l < n; l++) {
        if (sgn(A(i, l)) == 0) continue;
        Rat f(A(i, l));
        for (int j = 0; j < n; j++) C[i][j] += f * B[l][j];
      }
    Rat tr(0);
    for (int i = 0; i < n; i++) tr += C[i][i];
    ck = -tr / k;
    for (int i = 0; i < n; i++) C[i][i] += ck;
    B = C;
    // char coefficient c_k = (-1)^k s_k
    s[k] = (k % 2 == 0) ? ck : -ck;
  }
  return s;
}

enum class DefSign { NegativeDefinite, SemidefiniteNotDefinite, NotSemidefinite };

// Exact eigenvalue-sign classification of a symmetric integer matrix.
inline DefSign definiteness(const IntMatrix& G) {
  GramLattice gl{G};
  if (is_negative_definite(gl)) return DefSign::NegativeDefinite;
  int n = G.rows;
  IntMatrix negG(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) negG(i, j) = -G(i, j);
  auto s = principal_minor_sums(negG);  // -G PSD iff all s_k >= 0
  for (auto& v : s)
    if (sgn(v) < 0) return DefSign::NotSemidefinite;
  return DefSign::SemidefiniteNotDefinite;
}

namespace detail {
// Integer interval [lo, hi] with D*(t + c)^2 <= T (D > 0); false when empty.
// Any solution interval contains floor(-c) or floor(-c) + 1.
inline bool shifted_interval(const Rat& D, const Rat& c, const Rat& T, Int& lo, Int& hi) {
  if (sgn(T) < 0) return false;
  Rat bound = T / D;
  auto ok = [&](const Int& t) {
    Rat u = Rat(t) + c;
    return u * u <= bound;
  };
  Int base = floor_rat(-c);
  if (ok(base))
    lo = hi = base;
  else if (ok(base + 1))
    lo = hi = base + 1;
  else
    return false;
  while (ok(hi + 1)) hi += 1;
  while (ok(lo - 1)) lo -= 1;
  return true;
}
}  // namespace detail

// Exact count of v with v^T G v = -2, G negative definite (Fincke-Pohst).
inline Int root_count(const GramLattice& g) {
  if (!is_negative_definite(g)) throw std::invalid_argument("root_count: not negative definite");
  int n = g.rank();
  if (n == 0) return 0;
  // A = -G = R^T D R with R unit upper triangular, D positive diagonal.
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) a[i][j] = Rat(-g.gram(i, j));
  std::vector<Rat> D(n);
  std::vector<std::vector<Rat>> R(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; i++) {
    D[i] = a[i][i];
    R[i][i] = 1;
    for (int j = i + 1; j < n; j++) R[i][j] = a[i][j] / D[i];
    for (int k = i + 1; k < n; k++)
      for (int l = i + 1; l < n; l++) a[k][l] -= D[i] * R[i][k] * R[i][l];
  }
  // q(x) = sum_i D_i (x_i + sum_{j>i} R_ij x_j)^2 == 2
  Int count(0);
  std::vector<Int> x(n, Int(0));
  std::vector<Rat> budget(n + 1);  // budget[i]: remaining at level i (levels n-1..0)
  // recursive lambda over level i descending
  struct Rec {
    int n;
    const std::vector<Rat>& D;
    const std::vector<std::vector<Rat>>& R;
    std::vector<Int>& x;
    Int& count;
    void go(int i, const Rat& T) {
      Rat c(0);
      for (int j = i + 1; j < n; j++) c += R[i][j] * Rat(x[j]);
      Int lo, hi;
      if (!detail::shifted_interval(D[i], c, T, lo, hi)) return;
      for (Int t = lo; t <= hi; t += 1) {
        x[i] = t;
        Rat u = Rat(t) + c;
        Rat used = D[i] * u * u;
        Rat rem = T - used;
        if (i == 0) {
          if (sgn(rem) == 0) {
            // q == 2 exactly; exclude x = 0 (q would be 0 != 2 anyway)
            count += 1;
          }
        } else {
          go(i - 1, rem);
        }
      }
      x[i] = 0;
    }
  } rec{n, D, R, x, count};
  rec.go(n - 1, Rat(2));
  return count;
}

struct AdeBlock {
  char family;  // 'A', 'D', 'E'
  int n;
  bool operator==(const AdeBlock& o) const { return family == o.family && n == o.n; }
  bool operator<(const AdeBlock& o) const {
    return family != o.family ? family < o.family : n < o.n;
  }
};

struct AdeLabel {
  bool recognized{false};
  std::vector<AdeBlock> blocks;  // empty + recognized = trivial lattice ("A0")
  bool operator==(const AdeLabel& o) const {
    return recognized == o.recognized && blocks == o.blocks;
  }
  std::string str() const {
    if (!recognized) return "NotADE";
    if (blocks.empty()) return "A0";
    std::string s;
    for (size_t i = 0; i < blocks.size(); i++) {
      if (i) s += "+";
      s += blocks[i].family + std::to_string(blocks[i].n);
    }
    return s;
  }
};

inline std::optional<AdeBlock> identify_block(int r, const Int& absdet, const Int& roots) {
  // A_r: det r+1, r(r+1) roots; D_r (r>=4): det 4, 2r(r-1); E6/E7/E8: det 3/2/1.
  if (absdet == r + 1 && roots == Int(r) * (r + 1)) return AdeBlock{'A', r};
  if (r >= 4 && absdet == 4 && roots == Int(2) * r * (r - 1)) return AdeBlock{'D', r};
  if (r == 6 && absdet == 3 && roots == 72) return AdeBlock{'E', 6};
  if (r == 7 && absdet == 2 && roots == 126) return AdeBlock{'E', 7};
  if (r == 8 && absdet == 1 && roots == 240) return AdeBlock{'E', 8};
  return std::nullopt;
}

inline AdeLabel ade_type(const GramLattice& g) {
  int n = g.rank();
  if (n == 0) return AdeLabel{true, {}};
  if (!is_negative_definite(g)) return AdeLabel{false, {}};
  // split into connected components of the nonzero-entry graph
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int i = 0; i < n; i++) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = nc;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; v++)
        if (comp[v] < 0 && sgn(g.gram(u, v)) != 0) {
          comp[v] = nc;
          stack.push_back(v);
        }
    }
    nc++;
  }
  AdeLabel out{true, {}};
  for (int c = 0; c < nc; c++) {
    std::vector<int> idx;
    for (int i = 0; i < n; i++)
      if (comp[i] == c) idx.push_back(i);
    int r = int(idx.size());
    IntMatrix sub(r, r);
    for (int i = 0; i < r; i++)
      for (int j = 0; j < r; j++) sub(i, j) = g.gram(idx[i], idx[j]);
    GramLattice sg{sub};
    Int ad = abs(det(sub));
    Int rc = root_count(sg);
    auto blk = identify_block(r, ad, rc);
    if (!blk) return AdeLabel{false, {}};
    out.blocks.push_back(*blk);
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

}  // namespace lcy
