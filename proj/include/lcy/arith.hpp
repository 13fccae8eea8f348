#pragma once
// Exact arithmetic base layer. All quantities in this library are mpz/mpq;
// nothing anywhere is floating point.

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcy {

using Int = mpz_class;
using Rat = mpq_class;

inline int sgn(const Int& x) { return mpz_sgn(x.get_mpz_t()); }
inline int sgn(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int abs(const Int& a) { return ::abs(a); }

// floor(x) for rational x
inline Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}
inline Int ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

// floor(sqrt(n)), n >= 0
inline Int isqrt(const Int& n) {
  if (sgn(n) < 0) throw std::invalid_argument("isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline std::string rat_str(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_str(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

// Integer 2-vector with exact ops.
struct Vec2 {
  Int x{0}, y{0};
  Vec2() = default;
  Vec2(Int a, Int b) : x(std::move(a)), y(std::move(b)) {}
  Vec2(long a, long b) : x(a), y(b) {}
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2& o) const { return !(*this == o); }
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(const Int& c) const { return {x * c, y * c}; }
  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
};

// det(u, v) = u.x v.y - u.y v.x  (our orientation convention throughout)
inline Int wedge(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }

inline Int content(const Vec2& v) { return gcd(v.x, v.y); }

inline Vec2 primitive(const Vec2& v) {
  if (v.is_zero()) throw std::invalid_argument("primitive of zero vector");
  Int g = content(v);
  return {v.x / g, v.y / g};
}

// Rational 2-vector (for exact ray-crossing geometry).
struct QVec2 {
  Rat x{0}, y{0};
  QVec2() = default;
  QVec2(Rat a, Rat b) : x(std::move(a)), y(std::move(b)) {}
  QVec2(const Vec2& v) : x(v.x), y(v.y) {}
  bool operator==(const QVec2& o) const { return x == o.x && y == o.y; }
  QVec2 operator+(const QVec2& o) const { return {x + o.x, y + o.y}; }
  QVec2 operator-(const QVec2& o) const { return {x - o.x, y - o.y}; }
  QVec2 operator-() const { return {-x, -y}; }
  QVec2 operator*(const Rat& c) const { return {x * c, y * c}; }
  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
};

inline Rat wedge(const QVec2& u, const QVec2& v) { return u.x * v.y - u.y * v.x; }

}  // namespace lcy
