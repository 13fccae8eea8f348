#pragma once
// 2x2 integer matrices and SL2(Z) conjugacy classification.

#include <stdexcept>
#include <string>
#include <variant>

#include "lcy/arith.hpp"

namespace lcy {

struct Mat2 {
  Int a{1}, b{0}, c{0}, d{1};
  Mat2() = default;
  Mat2(Int a_, Int b_, Int c_, Int d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
  Mat2(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {}
  static Mat2 identity() { return {1, 0, 0, 1}; }
  Int det() const { return a * d - b * c; }
  Int trace() const { return a + d; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  QVec2 operator*(const QVec2& v) const {
    return {Rat(a) * v.x + Rat(b) * v.y, Rat(c) * v.x + Rat(d) * v.y};
  }
  bool operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  // inverse for det = +-1
  Mat2 inverse() const {
    Int dt = det();
    if (dt == 1) return {d, -b, -c, a};
    if (dt == -1) return {-d, b, c, -a};
    throw std::invalid_argument("Mat2::inverse requires det +-1");
  }
  Mat2 pow(long k) const {
    Mat2 base = k >= 0 ? *this : inverse();
    long n = k >= 0 ? k : -k;
    Mat2 r = identity();
    while (n) {
      if (n & 1) r = r * base;
      base = base * base;
      n >>= 1;
    }
    return r;
  }
  std::string str() const {
    return "[[" + a.get_str() + "," + b.get_str() + "],[" + c.get_str() + "," +
           d.get_str() + "]]";
  }
};

// SL2(Z) conjugacy classes (see sl2_conjugacy for the invariants used).
struct ConjIdentity { bool operator==(const ConjIdentity&) const { return true; } };
struct ConjNegIdentity { bool operator==(const ConjNegIdentity&) const { return true; } };
struct ConjParabolic {
  Int k;  // conjugate to [[1,k],[0,1]], k != 0
  bool operator==(const ConjParabolic& o) const { return k == o.k; }
};
struct ConjNegParabolic {
  Int k;  // conjugate to [[-1,k],[0,-1]], k != 0
  bool operator==(const ConjNegParabolic& o) const { return k == o.k; }
};
struct ConjElliptic {
  int trace;          // -1, 0 or 1
  int rotation_sign;  // sign of lower-left entry
  bool operator==(const ConjElliptic& o) const {
    return trace == o.trace && rotation_sign == o.rotation_sign;
  }
};
struct ConjHyperbolic {
  Int trace;  // |trace| > 2
  bool operator==(const ConjHyperbolic& o) const { return trace == o.trace; }
};

using ConjClass = std::variant<ConjIdentity, ConjNegIdentity, ConjParabolic,
                               ConjNegParabolic, ConjElliptic, ConjHyperbolic>;

inline std::string conj_str(const ConjClass& c) {
  struct V {
    std::string operator()(const ConjIdentity&) const { return "Identity"; }
    std::string operator()(const ConjNegIdentity&) const { return "NegIdentity"; }
    std::string operator()(const ConjParabolic& p) const {
      return "Parabolic(" + p.k.get_str() + ")";
    }
    std::string operator()(const ConjNegParabolic& p) const {
      return "NegParabolic(" + p.k.get_str() + ")";
    }
    std::string operator()(const ConjElliptic& e) const {
      return "Elliptic(" + std::to_string(e.trace) + "," +
             (e.rotation_sign > 0 ? "+" : "-") + ")";
    }
    std::string operator()(const ConjHyperbolic& h) const {
      return "Hyperbolic(" + h.trace.get_str() + ")";
    }
  };
  return std::visit(V{}, c);
}

// Completes primitive v to a positively oriented unimodular basis (v, v').
inline Vec2 unimodular_complement(const Vec2& v) {
  Int g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), v.x.get_mpz_t(),
             v.y.get_mpz_t());
  if (g != 1) throw std::invalid_argument("unimodular_complement: not primitive");
  // v.x * x + v.y * y = 1; take v' = (-y, x): det(v, v') = v.x*x + v.y*y = 1
  return {-y, x};
}

inline ConjClass sl2_conjugacy(const Mat2& M) {
  if (M.det() != 1) throw std::invalid_argument("sl2_conjugacy: det must be 1");
  Int tr = M.trace();
  if (M == Mat2::identity()) return ConjIdentity{};
  if (M == -Mat2::identity()) return ConjNegIdentity{};
  if (tr == 2 || tr == -2) {
    // (M -+ I) has rank 1; fixed direction v, then (M -+ I) v' = k v.
    Int s = tr == 2 ? 1 : -1;
    Mat2 N(M.a - s, M.b, M.c, M.d - s);
    // kernel direction of N
    Vec2 v;
    if (sgn(N.a) != 0 || sgn(N.b) != 0)
      v = primitive(Vec2(N.b, -N.a));
    else
      v = primitive(Vec2(N.d, -N.c));
    Vec2 vp = unimodular_complement(v);
    Vec2 w = N * vp;  // = k * v
    Int k = sgn(v.x) != 0 ? Int(w.x / v.x) : Int(w.y / v.y);
    if (tr == 2) return ConjParabolic{k};
    return ConjNegParabolic{k};
  }
  if (tr == -1 || tr == 0 || tr == 1) {
    // c != 0 is forced (integer upper-triangular with det 1 has trace +-2)
    return ConjElliptic{int(tr.get_si()), sgn(M.c)};
  }
  return ConjHyperbolic{tr};
}

}  // namespace lcy
