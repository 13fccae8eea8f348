#pragma once
// Seeds: a basis of a lattice N with a skew form, multipliers, and a frozen
// subset; mutation, duality, the rank-2 plane coordinates, and the
// coprime / maximally-factored moves.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcy/intmatrix.hpp"
#include "lcy/mat2.hpp"

namespace lcy {

struct RatMatrix {
  int rows{0}, cols{0};
  std::vector<Rat> a;
  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Rat(0)) {}
  Rat& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
  const Rat& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }
  bool operator==(const RatMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

struct Seed {
  int n{0};
  RatMatrix skew;            // <e_i, e_j>, antisymmetric
  std::vector<Rat> d;        // positive multipliers
  std::vector<bool> frozen;  // frozen indices
  IntMatrix basis_coords;    // row i = e_i in the fixed ambient lattice

  // epsilon_ij = d_j * <e_i, e_j>; must be integral
  IntMatrix epsilon() const {
    IntMatrix e(n, n);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        Rat v = skew(i, j) * d[j];
        v.canonicalize();
        if (v.get_den() != 1) throw std::invalid_argument("seed: epsilon not integral");
        e(i, j) = v.get_num();
      }
    return e;
  }

  void validate() const {
    if (int(d.size()) != n || int(frozen.size()) != n || skew.rows != n ||
        skew.cols != n || basis_coords.rows != n || basis_coords.cols != n)
      throw std::invalid_argument("seed: inconsistent sizes");
    for (int i = 0; i < n; i++) {
      if (sgn(d[i]) <= 0) throw std::invalid_argument("seed: d_i must be positive");
      for (int j = 0; j < n; j++)
        if (skew(i, j) != -skew(j, i))
          throw std::invalid_argument("seed: skew not antisymmetric");
    }
    epsilon();
    Int dt = det(basis_coords);
    if (dt != 1 && dt != -1) throw std::invalid_argument("seed: basis not unimodular");
  }

  bool operator==(const Seed& o) const {
    return n == o.n && skew == o.skew && d == o.d && frozen == o.frozen &&
           basis_coords == o.basis_coords;
  }
};

// e'_j = -e_j; e'_i = e_i + [eps_ij]_+ e_j. Form and multipliers on N are
// unchanged; skew is re-expressed in the new basis.
inline Seed mutate(const Seed& S, int j) {
  if (j < 0 || j >= S.n) throw std::invalid_argument("mutate: index out of range");
  if (S.frozen[j]) throw std::invalid_argument("mutate: frozen index");
  IntMatrix eps = S.epsilon();
  IntMatrix T = IntMatrix::identity(S.n);
  T(j, j) = -1;
  for (int i = 0; i < S.n; i++)
    if (i != j && sgn(eps(i, j)) > 0) T(i, j) = eps(i, j);
  Seed out = S;
  out.basis_coords = T * S.basis_coords;
  // skew' = T skew T^t
  RatMatrix ns(S.n, S.n);
  for (int i = 0; i < S.n; i++)
    for (int k = 0; k < S.n; k++) {
      Rat acc(0);
      for (int p = 0; p < S.n; p++) {
        if (sgn(T(i, p)) == 0) continue;
        for (int q = 0; q < S.n; q++) {
          if (sgn(T(k, q)) == 0) continue;
          acc += Rat(T(i, p)) * S.skew(p, q) * Rat(T(k, q));
        }
      }
      ns(i, k) = acc;
    }
  out.skew = ns;
  return out;
}

inline Seed mutate_word(const Seed& S, const std::vector<int>& word) {
  Seed cur = S;
  for (int j : word) cur = mutate(cur, j);
  return cur;
}

// skew -> [e_i,e_j] = d_i d_j <e_i,e_j>; d_i -> 1/d_i
inline Seed langlands_dual(const Seed& S) {
  Seed out = S;
  for (int i = 0; i < S.n; i++)
    for (int j = 0; j < S.n; j++) out.skew(i, j) = S.d[i] * S.d[j] * S.skew(i, j);
  for (int i = 0; i < S.n; i++) out.d[i] = 1 / S.d[i];
  return out;
}

struct PMaps {
  IntMatrix p1, p2;  // p1 = eps^t (v -> (v,.)), p2 = eps (v -> (.,v))
  std::vector<std::vector<Int>> K1, K2;
};

inline PMaps p_maps(const Seed& S) {
  IntMatrix eps = S.epsilon();
  PMaps out;
  out.p2 = eps;  // coordinate j of p2(e_i) is eps_ji = eps(j,i): columns are images
  out.p1 = eps.transpose();
  out.K1 = kernel_basis(out.p1);
  out.K2 = kernel_basis(out.p2);
  return out;
}

// Images of the basis in the rank-2 quotient plane, with the bracket
// [e_i,e_j] = d_i d_j <e_i,e_j> realized exactly as the determinant form.
struct Nbar2 {
  std::vector<Vec2> v;      // v_i = d'_i * primitive
  std::vector<Int> dprime;  // content of v_i (0 when v_i = 0)
  IntMatrix chart;          // 2 x n; rows B1, B2: plane basis inside Z^n
  IntMatrix proj;           // n x n; column i = p2 image of e_i
};

namespace detail {
// coordinates of col (in Z^n) w.r.t. the two rows of chart; must be integral
inline Vec2 chart_coords(const IntMatrix& chart, const std::vector<Int>& col) {
  IntMatrix Bt(chart.cols, 2);
  for (int j = 0; j < chart.cols; j++) {
    Bt(j, 0) = chart(0, j);
    Bt(j, 1) = chart(1, j);
  }
  auto sol = solve_rational(Bt, col);
  if (!sol) throw std::invalid_argument("chart_coords: not in the plane");
  for (auto& r : *sol)
    if (r.get_den() != 1) throw std::invalid_argument("chart_coords: not integral");
  // verify (free-variable convention makes the solve exact here: 2 unknowns)
  for (int j = 0; j < chart.cols; j++) {
    Rat lhs = (*sol)[0] * Rat(chart(0, j)) + (*sol)[1] * Rat(chart(1, j));
    if (lhs != Rat(col[j])) throw std::invalid_argument("chart_coords: inconsistent");
  }
  return {(*sol)[0].get_num(), (*sol)[1].get_num()};
}
}  // namespace detail

inline Nbar2 nbar2_coords(const Seed& S) {
  IntMatrix eps = S.epsilon();
  int n = S.n;
  // rows of cols_m are the images p2(e_i) (columns of eps)
  IntMatrix cols_m = eps.transpose();
  auto sat = saturation_basis(cols_m);
  if (sat.size() != 2) throw std::invalid_argument("nbar2_coords: skew rank != 2");
  IntMatrix satm = from_rows(sat, n);
  // B1 = primitive first nonzero image; complete inside the saturated plane
  int i0 = -1;
  for (int i = 0; i < n && i0 < 0; i++)
    for (int j = 0; j < n; j++)
      if (sgn(eps(j, i)) != 0) { i0 = i; break; }
  if (i0 < 0) throw std::invalid_argument("nbar2_coords: zero form");
  std::vector<Int> c0(n);
  for (int j = 0; j < n; j++) c0[j] = eps(j, i0);
  Int g(0);
  for (auto& x : c0) g = gcd(g, x);
  for (auto& x : c0) x /= g;
  Vec2 ab = detail::chart_coords(satm, c0);  // B1 in sat coords, primitive
  Vec2 gd = unimodular_complement(ab);       // det(ab, gd) = 1 -> use (B1, B2)
  IntMatrix chart(2, n);
  for (int j = 0; j < n; j++) {
    chart(0, j) = c0[j];
    chart(1, j) = gd.x * satm(0, j) + gd.y * satm(1, j);
  }
  auto images_in = [&](const IntMatrix& ch) {
    std::vector<Vec2> w(n);
    for (int i = 0; i < n; i++) {
      std::vector<Int> col(n);
      for (int j = 0; j < n; j++) col[j] = eps(j, i);
      w[i] = detail::chart_coords(ch, col);
    }
    return w;
  };
  std::vector<Vec2> w = images_in(chart);
  // orient so the bracket equals the determinant form
  int fix = 0;  // 0 unknown, +1 keep, -1 flip
  for (int i = 0; i < n && fix == 0; i++)
    for (int j = 0; j < n && fix == 0; j++) {
      Rat br = S.d[i] * S.d[j] * S.skew(i, j);
      if (sgn(br) == 0) continue;
      Int wd = wedge(w[i], w[j]);
      if (sgn(wd) == 0) continue;
      fix = sgn(br) == sgn(wd) ? 1 : -1;
    }
  if (fix < 0) {
    for (int j = 0; j < n; j++) chart(1, j) = -chart(1, j);
    for (auto& x : w) x.y = -x.y;
  }
  // pin the remaining shear freedom: the first image off the x-axis gets its
  // x-coordinate reduced into [0, |y|)
  for (int i = 0; i < n; i++) {
    if (sgn(w[i].y) == 0) continue;
    Int t, u = abs(w[i].y);
    mpz_fdiv_q(t.get_mpz_t(), w[i].x.get_mpz_t(), u.get_mpz_t());
    if (sgn(w[i].y) > 0) t = -t;
    // B2 -> B2 - t B1 shifts coordinates (x, y) -> (x + t y)
    if (sgn(t) != 0) {
      for (int j = 0; j < n; j++) chart(1, j) -= t * chart(0, j);
      for (auto& x : w) x.x += t * x.y;
    }
    break;
  }
  // the identification must be exact, not just sign-correct
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      Rat br = S.d[i] * S.d[j] * S.skew(i, j);
      if (br != Rat(wedge(w[i], w[j])))
        throw std::logic_error("nbar2_coords: bracket != determinant form");
    }
  Nbar2 out;
  out.v = w;
  out.dprime.resize(n);
  for (int i = 0; i < n; i++) out.dprime[i] = w[i].is_zero() ? Int(0) : content(w[i]);
  out.chart = chart;
  out.proj = eps;
  return out;
}

// Image of an ambient vector of S2's basis in the chart of base (= an
// unmutated seed sharing the same ambient lattice as S2).
inline Vec2 nbar2_project(const Nbar2& base, const std::vector<Int>& e_coords) {
  int n = base.proj.rows;
  std::vector<Int> col(n, Int(0));
  for (int j = 0; j < n; j++)
    for (int i = 0; i < n; i++) col[j] += base.proj(j, i) * e_coords[i];
  return detail::chart_coords(base.chart, col);
}

struct RaySpec {
  Vec2 u;      // primitive direction
  Int k{0};    // blowup count; 0 forces frozen
  bool frozen{false};
};
using FanSeedSpec = std::vector<RaySpec>;

inline Seed seed_from_fan_spec(FanSeedSpec spec) {
  for (auto& r : spec) {
    if (r.u.is_zero() || content(r.u) != 1)
      throw std::invalid_argument("fan spec: rays must be primitive");
    if (sgn(r.k) < 0) throw std::invalid_argument("fan spec: k must be >= 0");
    if (r.frozen && sgn(r.k) != 0)
      throw std::invalid_argument("fan spec: frozen rays carry no blowups");
    if (sgn(r.k) == 0) r.frozen = true;
  }
  // the directions must generate Z^2; augment with frozen rays if not
  auto spans = [&]() {
    IntMatrix m(int(spec.size()), 2);
    for (size_t i = 0; i < spec.size(); i++) {
      m(int(i), 0) = spec[i].u.x;
      m(int(i), 1) = spec[i].u.y;
    }
    IntMatrix h = hnf_rows(m);
    return h == IntMatrix::identity(2);
  };
  for (Vec2 cand : {Vec2(1, 0), Vec2(0, 1)})
    if (!spans()) spec.push_back({cand, 0, true});
  if (!spans()) throw std::logic_error("fan spec: augmentation failed");
  int n = int(spec.size());
  Seed S;
  S.n = n;
  S.skew = RatMatrix(n, n);
  S.d.resize(n);
  S.frozen.resize(n);
  S.basis_coords = IntMatrix::identity(n);
  for (int i = 0; i < n; i++) {
    S.d[i] = sgn(spec[i].k) > 0 ? Rat(spec[i].k) : Rat(1);
    S.frozen[i] = spec[i].frozen;
    for (int j = 0; j < n; j++) S.skew(i, j) = Rat(wedge(spec[i].u, spec[j].u));
  }
  S.validate();
  return S;
}

// (primitive direction, total d', frozen) data of a rank-2 seed
inline FanSeedSpec fan_data_of(const Seed& S) {
  Nbar2 nb = nbar2_coords(S);
  FanSeedSpec out;
  for (int i = 0; i < S.n; i++) {
    if (nb.v[i].is_zero())
      throw std::invalid_argument("fan data: basis vector maps to zero");
    out.push_back({primitive(nb.v[i]), S.frozen[i] ? Int(0) : nb.dprime[i],
                   bool(S.frozen[i])});
  }
  return out;
}

// merge non-frozen vectors with equal primitive direction, summing d'
inline Seed make_coprime(const Seed& S) {
  FanSeedSpec data = fan_data_of(S);
  FanSeedSpec merged;
  for (auto& r : data) {
    if (!r.frozen) {
      bool found = false;
      for (auto& m : merged)
        if (!m.frozen && m.u == r.u) {
          m.k += r.k;
          found = true;
          break;
        }
      if (found) continue;
    }
    merged.push_back(r);
  }
  return seed_from_fan_spec(merged);
}

// split each non-frozen vector into d' copies with d' = 1
inline Seed maximally_factor(const Seed& S) {
  FanSeedSpec data = fan_data_of(S);
  FanSeedSpec split;
  for (auto& r : data) {
    if (r.frozen) {
      split.push_back(r);
    } else {
      for (Int t(0); t < r.k; t += 1) split.push_back({r.u, 1, false});
    }
  }
  return seed_from_fan_spec(split);
}

// One tropical mutation: piecewise-linear, bends on the side u ^ ubar > 0.
struct TropPL {
  Vec2 ubar;
  Int dprime;
  Vec2 operator()(const Vec2& u) const {
    Int c = wedge(u, ubar);
    if (sgn(c) > 0) return u + ubar * (dprime * c);
    return u;
  }
  QVec2 operator()(const QVec2& u) const {
    Rat c = wedge(u, QVec2(ubar));
    if (sgn(c) > 0) return u + QVec2(ubar) * (Rat(dprime) * c);
    return u;
  }
};

inline TropPL tropical_x_mutation(const Seed& S, int j) {
  if (S.frozen[j]) throw std::invalid_argument("tropical mutation: frozen index");
  Nbar2 nb = nbar2_coords(S);
  if (nb.v[j].is_zero())
    throw std::invalid_argument("tropical mutation: zero image");
  return {primitive(nb.v[j]), nb.dprime[j]};
}

// Tropical mutation of S at j expressed in the chart of an nbar2 computed
// elsewhere (for composing maps across a mutation word in one fixed chart).
inline TropPL tropical_x_mutation_in_chart(const Nbar2& base, const Seed& S, int j) {
  if (S.frozen[j]) throw std::invalid_argument("tropical mutation: frozen index");
  std::vector<Int> e(S.n);
  for (int i = 0; i < S.n; i++) e[i] = S.basis_coords(j, i);
  Vec2 w = nbar2_project(base, e);
  if (w.is_zero()) throw std::invalid_argument("tropical mutation: zero image");
  // d' is the content of the image; frozen flag already checked
  return {primitive(w), content(w)};
}

// Equality of seed data up to the simultaneous positive rescaling
// skew -> c * skew, d -> d / c.
inline bool seeds_equal_up_to_rescale(const Seed& A, const Seed& B) {
  if (A.n != B.n || A.frozen != B.frozen) return false;
  Rat c(0);
  for (int i = 0; i < A.n && sgn(c) == 0; i++)
    for (int j = 0; j < A.n && sgn(c) == 0; j++)
      if (sgn(A.skew(i, j)) != 0) {
        if (sgn(B.skew(i, j)) == 0) return false;
        c = B.skew(i, j) / A.skew(i, j);
      }
  if (sgn(c) == 0) {
    // zero skew: compare d up to a common positive factor
    c = A.d[0] / B.d[0];
  }
  if (sgn(c) <= 0) return false;
  for (int i = 0; i < A.n; i++) {
    if (B.d[i] * c != A.d[i]) return false;
    for (int j = 0; j < A.n; j++)
      if (B.skew(i, j) != c * A.skew(i, j)) return false;
  }
  return true;
}

}  // namespace lcy
