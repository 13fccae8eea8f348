#pragma once
// The integral linear plane with one singular point: smooth complete fan
// models, developing maps, monodromy, exact line tracing, and the nu maps.

#include <map>
#include <stdexcept>
#include <variant>
#include <vector>

#include "lcy/mat2.hpp"
#include "lcy/seed.hpp"

namespace lcy {

struct FanModel {
  std::vector<Vec2> rays;  // primitive, counterclockwise, det(v_i, v_{i+1}) = 1
  std::vector<Int> k;      // blowup counts
  std::vector<Int> a_toric;
  std::vector<Int> a;      // a_i = a_i^toric - k_i
  int n() const { return int(rays.size()); }
};

namespace detail {
// angular class of u around the origin measured ccw from base: 0 = same
// direction, 1 = (0,pi), 2 = pi, 3 = (pi,2pi)
inline int ang_class(const Vec2& base, const Vec2& u) {
  Int w = wedge(base, u);
  if (sgn(w) > 0) return 1;
  if (sgn(w) < 0) return 3;
  Int dot = base.x * u.x + base.y * u.y;
  return sgn(dot) > 0 ? 0 : 2;
}
}  // namespace detail

// Merge duplicate directions, sort counterclockwise keeping the first input
// ray first, complete, refine to a smooth fan with >= 4 rays (inserted rays
// get k = 0), and compute the self-intersection data.
inline FanModel normalize_fan(const FanSeedSpec& spec) {
  std::vector<Vec2> rays;
  std::vector<Int> ks;
  for (auto& r : spec) {
    if (r.u.is_zero() || content(r.u) != 1)
      throw std::invalid_argument("normalize_fan: rays must be primitive");
    if (sgn(r.k) < 0) throw std::invalid_argument("normalize_fan: k >= 0 required");
    bool merged = false;
    for (size_t i = 0; i < rays.size(); i++)
      if (rays[i] == r.u) {
        ks[i] += r.k;
        merged = true;
        break;
      }
    if (!merged) {
      rays.push_back(r.u);
      ks.push_back(r.k);
    }
  }
  if (rays.empty()) throw std::invalid_argument("normalize_fan: no rays");
  Vec2 base = rays[0];
  std::vector<size_t> idx(rays.size());
  for (size_t i = 0; i < idx.size(); i++) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](size_t p, size_t q) {
    int cp = detail::ang_class(base, rays[p]);
    int cq = detail::ang_class(base, rays[q]);
    if (cp != cq) return cp < cq;
    return sgn(wedge(rays[p], rays[q])) > 0;
  });
  std::vector<Vec2> v;
  std::vector<Int> k;
  for (size_t i : idx) {
    v.push_back(rays[i]);
    k.push_back(ks[i]);
  }
  // completeness: every consecutive (cyclic) pair must satisfy wedge > 0
  auto insert_at = [&](size_t pos, const Vec2& u) {  // after index pos
    v.insert(v.begin() + long(pos) + 1, u);
    k.insert(k.begin() + long(pos) + 1, Int(0));
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < v.size(); i++) {
      const Vec2& cur = v[i];
      const Vec2& nxt = v[(i + 1) % v.size()];
      Int w = wedge(cur, nxt);
      if (v.size() == 1 || sgn(w) <= 0) {
        // gap of angle >= pi (or a single ray): split it
        Vec2 ins = (v.size() > 1 && sgn(w) < 0) ? primitive(-(cur + nxt))
                                                : Vec2(-cur.y, cur.x);
        insert_at(i, ins);
        changed = true;
        break;
      }
    }
  }
  // smoothness: subdivide until all consecutive determinants are 1. For a
  // cone (u, w) with det d > 1 insert the unique primitive t inside it with
  // det(u, t) = 1; then det(t, w) < d, so the subdivision terminates.
  changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < v.size(); i++) {
      const Vec2 u = v[i];
      const Vec2 w = v[(i + 1) % v.size()];
      Int d = wedge(u, w);
      if (d > 1) {
        Vec2 z = unimodular_complement(u);  // det(u, z) = 1
        // w = alpha u + d z with gcd(alpha, d) = 1; t = x u + z for the
        // smallest x with det(t, w) = x d - alpha > 0
        Int alpha = wedge(w, z);
        Int x;
        mpz_fdiv_q(x.get_mpz_t(), alpha.get_mpz_t(), d.get_mpz_t());
        x += 1;
        insert_at(i, u * x + z);
        changed = true;
        break;
      }
    }
  }
  while (v.size() < 4) insert_at(0, primitive(v[0] + v[1]));
  FanModel m;
  m.rays = v;
  m.k = k;
  int n = m.n();
  m.a_toric.resize(n);
  m.a.resize(n);
  for (int i = 0; i < n; i++) {
    const Vec2& prev = v[(i + n - 1) % n];
    const Vec2& next = v[(i + 1) % n];
    Int at = -wedge(prev, next);
    if (!(prev + v[i] * at + next).is_zero())
      throw std::logic_error("normalize_fan: toric relation failed");
    m.a_toric[i] = at;
    m.a[i] = at - m.k[i];
  }
  return m;
}

inline FanModel fan_model_of(const Seed& S) { return normalize_fan(fan_data_of(S)); }

// delta(v_1) = (1,0), delta(v_2) = (0,1), extended over all sheets by
// delta(v_{i+1}) = -delta(v_{i-1}) - a_i delta(v_i). Index m in Z addresses
// ray (m mod n) on sheet floor(m / n).
class DevelopingMap {
 public:
  explicit DevelopingMap(FanModel model) : model_(std::move(model)) {
    fwd_ = {Vec2(1, 0), Vec2(0, 1)};
  }
  const FanModel& model() const { return model_; }
  Vec2 image(long m) const {
    if (m >= 0) {
      while (long(fwd_.size()) <= m) {
        long t = long(fwd_.size());
        // delta(t) = -delta(t-2) - a_{t-1} delta(t-1)
        fwd_.push_back(-at(t - 2) - at(t - 1) * a_of(t - 1));
      }
      return fwd_[size_t(m)];
    }
    while (long(bwd_.size()) < -m) {
      long t = -long(bwd_.size()) - 1;
      // delta(t) = -delta(t+2) - a_{t+1} delta(t+1)
      bwd_.push_back(-at(t + 2) - at(t + 1) * a_of(t + 1));
    }
    return bwd_[size_t(-m - 1)];
  }
  Vec2 image(long sheet, int ray) const { return image(sheet * model_.n() + ray); }

 private:
  Int a_of(long m) const {
    long n = model_.n();
    return model_.a[size_t(((m % n) + n) % n)];
  }
  Vec2 at(long m) const {
    if (m >= 0) return fwd_[size_t(m)];
    return bwd_[size_t(-m - 1)];
  }
  FanModel model_;
  mutable std::vector<Vec2> fwd_;  // indices 0, 1, 2, ...
  mutable std::vector<Vec2> bwd_;  // indices -1, -2, ...
};

inline DevelopingMap develop(const FanModel& model) { return DevelopingMap(model); }

// mu in the basis (delta0(v_1), delta0(v_2)): inverse of the matrix with
// columns delta1(v_1), delta1(v_2)
inline Mat2 monodromy(const FanModel& model) {
  DevelopingMap dev(model);
  Vec2 c1 = dev.image(1, 0);
  Vec2 c2 = dev.image(1, 1);
  Mat2 m(c1.x, c2.x, c1.y, c2.y);
  if (m.det() != 1) throw std::logic_error("monodromy: determinant != 1");
  return m.inverse();
}

// exact developing coordinates of a nonzero point given in fan coordinates:
// find its fan cone and push through delta0
struct ConePoint {
  int cone;    // q = alpha v_cone + beta v_{cone+1}
  Rat alpha, beta;
};

inline ConePoint locate_in_fan(const FanModel& model, const QVec2& q) {
  if (q.is_zero()) throw std::invalid_argument("locate_in_fan: origin");
  int n = model.n();
  for (int i = 0; i < n; i++) {
    QVec2 u(model.rays[i]), w(model.rays[(i + 1) % n]);
    // q = alpha u + beta w; det(u, w) = 1
    Rat alpha = wedge(q, w);
    Rat beta = wedge(u, q);
    if (sgn(alpha) >= 0 && sgn(beta) >= 0) return {i, alpha, beta};
  }
  throw std::logic_error("locate_in_fan: fan does not cover the plane");
}

inline QVec2 dev_coords(const DevelopingMap& dev, const QVec2& q) {
  ConePoint cp = locate_in_fan(dev.model(), q);
  // the second index stays on the universal cover: the last cone of the
  // sheet uses delta(n), not delta(0)
  QVec2 u(dev.image(cp.cone));
  QVec2 w(dev.image(cp.cone + 1));
  return u * cp.alpha + w * cp.beta;
}

// ---- line tracing ----

struct Crossing {
  long ray;     // global ray index (sheet * n + i)
  Rat t;        // line parameter
  QVec2 point;  // crossing point in developing coordinates
};

struct Escape {
  long cone;  // global cone index the end of the line lies in
};

struct TraceWrapsInfinitely {};
struct TraceEscapes {
  Escape forward, backward;
  Int wrap_count{0};
};
using TraceVerdict = std::variant<TraceWrapsInfinitely, TraceEscapes>;

struct LineTrace {
  std::vector<Crossing> crossings;  // sorted by parameter
  TraceVerdict verdict;
};

namespace detail {
// find the global cone index within the given sheet containing p
inline long locate_in_sheet(const DevelopingMap& dev, long sheet, const QVec2& p) {
  int n = dev.model().n();
  for (int i = 0; i < n; i++) {
    long m = sheet * n + i;
    QVec2 u(dev.image(m)), w(dev.image(m + 1));
    Rat alpha = wedge(p, w);
    Rat beta = wedge(u, p);
    if (sgn(alpha) >= 0 && sgn(beta) >= 0) return m;
  }
  throw std::invalid_argument("trace_line: start point not in the given sheet");
}

// whether the monodromy class allows infinite wrapping
inline bool infinite_wrap_class(const Mat2& mu) {
  Int tr = mu.trace();
  if (tr > 2) return true;  // hyperbolic
  if (tr == 2 && !(mu == Mat2::identity())) {
    ConjClass c = sl2_conjugacy(mu.inverse());
    if (auto* p = std::get_if<ConjParabolic>(&c)) return sgn(p->k) < 0;
  }
  return false;
}
}  // namespace detail

inline LineTrace trace_line(const FanModel& model, long sheet, const QVec2& p,
                            const QVec2& w, long wrap_cutoff = 50) {
  if (p.is_zero()) throw std::invalid_argument("trace_line: start at origin");
  if (w.is_zero()) throw std::invalid_argument("trace_line: zero direction");
  DevelopingMap dev(model);
  int n = model.n();
  Rat side = wedge(p, w);  // > 0: origin on the left, travel ccw
  LineTrace out;
  if (sgn(side) == 0) {
    // line through the origin: both ends escape within their own cones
    long mf = detail::locate_in_sheet(dev, sheet, w);
    long mb = detail::locate_in_sheet(dev, sheet, -w);
    out.verdict = TraceEscapes{Escape{mf}, Escape{mb}, Int(0)};
    return out;
  }
  long start = detail::locate_in_sheet(dev, sheet, p);
  long limit = wrap_cutoff * n + n;
  // walk one parameter direction; returns escape cone or nullopt on cutoff
  auto walk = [&](long m0, bool ccw, std::vector<Crossing>& acc) -> std::optional<long> {
    long m = m0;
    for (long steps = 0; steps <= limit; steps++) {
      long r_idx = ccw ? m + 1 : m;
      QVec2 r(dev.image(r_idx));
      Rat rw = wedge(r, w);
      // the crossing parameter s = side/rw is positive iff the ray is hit
      if (sgn(rw) != sgn(side)) return m;  // no further crossing: escape in cone m
      Rat s = side / rw;
      Rat t = wedge(p, r) / rw;
      acc.push_back({r_idx, t, r * s});
      m += ccw ? 1 : -1;
    }
    return std::nullopt;
  };
  bool ccw = sgn(side) > 0;
  std::vector<Crossing> fw, bw;
  auto fesc = walk(start, ccw, fw);
  // backward: same crossing condition with direction -w; sgn(p ^ -w) = -side
  auto walk_back = [&]() -> std::optional<long> {
    long m = start;
    for (long steps = 0; steps <= limit; steps++) {
      long r_idx = ccw ? m : m + 1;  // backward travel goes the other way
      QVec2 r(dev.image(r_idx));
      Rat rw = wedge(r, w);
      if (sgn(rw) != sgn(side)) return m;
      Rat s = side / rw;
      Rat t = wedge(p, r) / rw;
      bw.push_back({r_idx, t, r * s});
      m += ccw ? -1 : 1;
    }
    return std::nullopt;
  };
  auto besc = walk_back();
  if (!fesc || !besc) {
    Mat2 mu = monodromy(model);
    if (detail::infinite_wrap_class(mu)) {
      out.verdict = TraceWrapsInfinitely{};
      // report the crossings found up to the cutoff
    } else {
      throw std::logic_error(
          "trace_line: wrap cutoff hit but monodromy forbids infinite wrapping");
    }
  }
  // merge crossings sorted by parameter
  std::reverse(bw.begin(), bw.end());
  out.crossings = bw;
  out.crossings.insert(out.crossings.end(), fw.begin(), fw.end());
  if (fesc && besc) {
    // wrap count: the crossed cover rays are consecutive, giving s/n full
    // circuits. A final partial circuit that misses a single ray counts only
    // when an end of the line escapes parallel to that ray: the line then
    // sweeps a whole turn with the missed ray on its boundary. (A short
    // sweep can also touch all classes but one when the developed rays
    // cluster, and that is not a wrap.)
    long s = long(out.crossings.size());
    Int k(s / n);
    if (s > 0 && s % n == n - 1) {
      long lo = out.crossings.front().ray, hi = lo;
      for (auto& c : out.crossings) {
        lo = std::min(lo, c.ray);
        hi = std::max(hi, c.ray);
      }
      if (sgn(wedge(w, QVec2(dev.image(lo - 1)))) == 0 ||
          sgn(wedge(w, QVec2(dev.image(hi + 1)))) == 0)
        k += 1;
    }
    out.verdict = TraceEscapes{Escape{*fesc}, Escape{*besc}, k};
  }
  return out;
}

// ---- nu maps ----

namespace detail {
inline bool model_is_positive(const Mat2& mu) {
  Int tr = mu.trace();
  if (tr > 2) return false;  // negative definite
  if (tr == 2 && !(mu == Mat2::identity())) {
    ConjClass c = sl2_conjugacy(mu.inverse());
    if (auto* p = std::get_if<ConjParabolic>(&c))
      if (sgn(p->k) < 0) return false;  // semidefinite
  }
  return true;
}

// Rotate half a turn around the origin on the developed cover. The landing
// address is half a turn away from q's, so scanning cover cones away from q's
// cone (up for the counterclockwise half-turn, down for the clockwise one),
// the first cone whose developed span contains the target is the landing
// cone: every cone spans less than a half turn, so no earlier cone can
// contain the target direction. A deck turns at least 60 degrees on a
// positive model, so the landing is at most three decks away.
inline Vec2 nu_apply(const FanModel& model, const DevelopingMap& dev,
                     const QVec2& target, int from_cone, bool upward) {
  int n = model.n();
  for (int s = 0; s <= 4 * n; s++) {
    long j = upward ? from_cone + s : from_cone - s;
    QVec2 r1(dev.image(j)), r2(dev.image(j + 1));
    Rat alpha = wedge(target, r2);
    Rat beta = wedge(r1, target);
    if (sgn(alpha) < 0 || sgn(beta) < 0) continue;
    size_t c = size_t(((j % n) + n) % n);
    QVec2 res = QVec2(model.rays[c]) * alpha +
                QVec2(model.rays[(c + 1) % size_t(n)]) * beta;
    if (res.x.get_den() != 1 || res.y.get_den() != 1)
      throw std::logic_error("nu: non-integral image");
    return {res.x.get_num(), res.y.get_num()};
  }
  throw std::logic_error("nu: image direction not within one deck");
}
}  // namespace detail

// nu_plus(q): backward infinity direction of the line through q, parallel to
// q, with the origin on the positive side — the clockwise half-turn on the
// developed cover. One deck up from the landing sheet this reads as
// -mu^{-1} acting in developing coordinates.
inline Vec2 nu_plus(const FanModel& model, const Vec2& q) {
  Mat2 mu = monodromy(model);
  if (!detail::model_is_positive(mu))
    throw std::invalid_argument("nu_plus: model not positive");
  DevelopingMap dev(model);
  ConePoint cp = locate_in_fan(model, QVec2(q));
  QVec2 t = -dev_coords(dev, QVec2(q));
  return detail::nu_apply(model, dev, t, cp.cone, false);
}

// mirror image: the counterclockwise half-turn; reads as -mu one deck down
inline Vec2 nu_minus(const FanModel& model, const Vec2& q) {
  Mat2 mu = monodromy(model);
  if (!detail::model_is_positive(mu))
    throw std::invalid_argument("nu_minus: model not positive");
  DevelopingMap dev(model);
  ConePoint cp = locate_in_fan(model, QVec2(q));
  QVec2 t = -dev_coords(dev, QVec2(q));
  return detail::nu_apply(model, dev, t, cp.cone, true);
}

// ---- cluster complex region ----

struct SurdVal {
  Rat a, b;  // a + b*sqrt(D)
};
struct EigenRay {
  SurdVal x, y;
  Int D;  // trace^2 - 4
};

struct RegionFullPlane {};
struct RegionEmpty {};
struct RegionConeBetweenEigenrays {
  EigenRay l1, l2;
};
struct RegionSingleRayComplement {
  Vec2 ray;
};
using ClusterRegion = std::variant<RegionFullPlane, RegionEmpty,
                                   RegionConeBetweenEigenrays,
                                   RegionSingleRayComplement>;

inline std::string region_kind(const ClusterRegion& r) {
  struct V {
    std::string operator()(const RegionFullPlane&) const { return "FullPlane"; }
    std::string operator()(const RegionEmpty&) const { return "Empty"; }
    std::string operator()(const RegionConeBetweenEigenrays&) const {
      return "ConeBetweenEigenrays";
    }
    std::string operator()(const RegionSingleRayComplement&) const {
      return "SingleRayComplement";
    }
  };
  return std::visit(V{}, r);
}

inline ClusterRegion cluster_complex_region(const FanModel& model) {
  Mat2 mu = monodromy(model);
  ConjClass c = sl2_conjugacy(mu.inverse());
  if (std::holds_alternative<ConjIdentity>(c)) return RegionFullPlane{};
  if (auto* p = std::get_if<ConjParabolic>(&c))
    return sgn(p->k) > 0 ? ClusterRegion(RegionFullPlane{})
                         : ClusterRegion(RegionEmpty{});  // semidefinite
  if (auto* e = std::get_if<ConjElliptic>(&c))
    return e->rotation_sign < 0 ? ClusterRegion(RegionFullPlane{})
                                : ClusterRegion(RegionEmpty{});
  if (std::holds_alternative<ConjNegIdentity>(c)) return RegionEmpty{};
  if (auto* np = std::get_if<ConjNegParabolic>(&c)) {
    if (sgn(np->k) < 0) return RegionEmpty{};  // all-wrap I*
    // trace -2 some-wrap: the two eigenrays coincide
    Mat2 N(mu.a + 1, mu.b, mu.c, mu.d + 1);  // mu + I, rank 1
    Vec2 v = (sgn(N.a) != 0 || sgn(N.b) != 0) ? primitive(Vec2(N.b, -N.a))
                                              : primitive(Vec2(N.d, -N.c));
    return RegionSingleRayComplement{v};
  }
  auto& h = std::get<ConjHyperbolic>(c);
  if (h.trace > 2) return RegionEmpty{};  // negative definite
  // Tr mu < -2: cone between the (irrational) eigenrays of mu
  Int t = mu.trace();
  Int D = t * t - 4;
  auto ray_for = [&](int s) {  // eigenvalue (t + s*sqrt(D))/2
    SurdVal lambda{Rat(t) / 2, Rat(s) / 2};
    EigenRay r;
    r.D = D;
    if (sgn(mu.b) != 0) {
      // eigenvector (b, lambda - a)
      r.x = {Rat(mu.b), Rat(0)};
      r.y = {lambda.a - Rat(mu.a), lambda.b};
    } else {
      // eigenvector (lambda - d, c)
      r.x = {lambda.a - Rat(mu.d), lambda.b};
      r.y = {Rat(mu.c), Rat(0)};
    }
    return r;
  };
  return RegionConeBetweenEigenrays{ray_for(+1), ray_for(-1)};
}

}  // namespace lcy
