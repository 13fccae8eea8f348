#pragma once
// Exact integer matrices: Hermite reduction, saturated kernels, lattice
// comparison, rational solving. Row-major storage.

#include <cassert>
#include <optional>
#include <vector>

#include "lcy/arith.hpp"

namespace lcy {

struct IntMatrix {
  int rows{0}, cols{0};
  std::vector<Int> a;  // row-major

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Int(0)) {}
  IntMatrix(std::vector<std::vector<Int>> v) {
    rows = int(v.size());
    cols = rows ? int(v[0].size()) : 0;
    for (auto& row : v) {
      assert(int(row.size()) == cols);
      for (auto& x : row) a.push_back(x);
    }
  }
  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; i++) m(i, i) = 1;
    return m;
  }
  Int& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
  const Int& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }
  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
  IntMatrix transpose() const {
    IntMatrix t(cols, rows);
    for (int i = 0; i < rows; i++)
      for (int j = 0; j < cols; j++) t(j, i) = (*this)(i, j);
    return t;
  }
  IntMatrix operator*(const IntMatrix& o) const {
    assert(cols == o.rows);
    IntMatrix r(rows, o.cols);
    for (int i = 0; i < rows; i++)
      for (int k = 0; k < cols; k++) {
        const Int& x = (*this)(i, k);
        if (sgn(x) == 0) continue;
        for (int j = 0; j < o.cols; j++) r(i, j) += x * o(k, j);
      }
    return r;
  }
  std::vector<Int> operator*(const std::vector<Int>& v) const {
    assert(int(v.size()) == cols);
    std::vector<Int> r(rows, Int(0));
    for (int i = 0; i < rows; i++)
      for (int j = 0; j < cols; j++) r[i] += (*this)(i, j) * v[j];
    return r;
  }
  bool is_zero() const {
    for (auto& x : a)
      if (sgn(x) != 0) return false;
    return true;
  }
};

// Determinant by exact fraction-free (Bareiss) elimination.
inline Int det(const IntMatrix& m) {
  assert(m.rows == m.cols);
  int n = m.rows;
  if (n == 0) return 1;
  IntMatrix w = m;
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; k++) {
    if (sgn(w(k, k)) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; i++)
        if (sgn(w(i, k)) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; j++) std::swap(w(k, j), w(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; i++)
      for (int j = k + 1; j < n; j++) {
        w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
      }
    prev = w(k, k);
  }
  return sign > 0 ? w(n - 1, n - 1) : -w(n - 1, n - 1);
}

// In-place unimodular column reduction: transforms w to column echelon form
// (Hermite-like), applying the same column ops to u. Pivot entries positive.
inline void column_reduce(IntMatrix& w, IntMatrix& u) {
  int r = 0;  // pivot row
  int c = 0;  // next pivot column
  auto colswap = [&](IntMatrix& m, int i, int j) {
    for (int k = 0; k < m.rows; k++) std::swap(m(k, i), m(k, j));
  };
  auto coladd = [&](IntMatrix& m, int dst, int src, const Int& f) {
    for (int k = 0; k < m.rows; k++) m(k, dst) += f * m(k, src);
  };
  auto colneg = [&](IntMatrix& m, int i) {
    for (int k = 0; k < m.rows; k++) m(k, i) = -m(k, i);
  };
  while (r < w.rows && c < w.cols) {
    // gcd-chase within row r over columns c..end
    int nz = -1;
    for (int j = c; j < w.cols; j++)
      if (sgn(w(r, j)) != 0) { nz = j; break; }
    if (nz < 0) { r++; continue; }
    if (nz != c) { colswap(w, c, nz); colswap(u, c, nz); }
    bool again = true;
    while (again) {
      again = false;
      for (int j = c + 1; j < w.cols; j++) {
        if (sgn(w(r, j)) == 0) continue;
        // reduce column j by column c
        Int q = w(r, j) / w(r, c);  // truncated ok; loop until zero
        if (sgn(q) != 0) { coladd(w, j, c, -q); coladd(u, j, c, -q); }
        if (sgn(w(r, j)) != 0) {
          if (abs(w(r, j)) < abs(w(r, c))) { colswap(w, c, j); colswap(u, c, j); }
          again = true;
        }
      }
    }
    if (sgn(w(r, c)) < 0) { colneg(w, c); colneg(u, c); }
    r++;
    c++;
  }
}

// Basis of the saturated integer kernel {v : Av = 0}, as rows of the result.
inline std::vector<std::vector<Int>> kernel_basis(const IntMatrix& A) {
  IntMatrix w = A;
  IntMatrix u = IntMatrix::identity(A.cols);
  column_reduce(w, u);
  std::vector<std::vector<Int>> out;
  for (int j = 0; j < A.cols; j++) {
    bool zero = true;
    for (int i = 0; i < A.rows; i++)
      if (sgn(w(i, j)) != 0) { zero = false; break; }
    if (zero) {
      std::vector<Int> v(A.cols);
      for (int i = 0; i < A.cols; i++) v[i] = u(i, j);
      out.push_back(std::move(v));
    }
  }
  return out;
}

// Row-style Hermite normal form (canonical form of the row lattice): each
// pivot positive, entries above pivots reduced into [0, pivot). Zero rows
// dropped. Two row sets span the same lattice iff their HNFs coincide.
inline IntMatrix hnf_rows(const IntMatrix& m) {
  IntMatrix w = m;
  int pr = 0;
  auto rowswap = [&](int i, int j) {
    for (int k = 0; k < w.cols; k++) std::swap(w(i, k), w(j, k));
  };
  auto rowadd = [&](int dst, int src, const Int& f) {
    for (int k = 0; k < w.cols; k++) w(dst, k) += f * w(src, k);
  };
  std::vector<int> pivots;
  for (int c = 0; c < w.cols && pr < w.rows; c++) {
    int nz = -1;
    for (int i = pr; i < w.rows; i++)
      if (sgn(w(i, c)) != 0) { nz = i; break; }
    if (nz < 0) continue;
    if (nz != pr) rowswap(pr, nz);
    bool again = true;
    while (again) {
      again = false;
      for (int i = pr + 1; i < w.rows; i++) {
        if (sgn(w(i, c)) == 0) continue;
        Int q = w(i, c) / w(pr, c);
        if (sgn(q) != 0) rowadd(i, pr, -q);
        if (sgn(w(i, c)) != 0) {
          if (abs(w(i, c)) < abs(w(pr, c))) rowswap(pr, i);
          again = true;
        }
      }
    }
    if (sgn(w(pr, c)) < 0)
      for (int k = 0; k < w.cols; k++) w(pr, k) = -w(pr, k);
    pivots.push_back(c);
    pr++;
  }
  // reduce entries above pivots, left to right: reducing by pivot row p only
  // touches columns >= pivots[p], so earlier pivot columns stay reduced
  for (int p = 0; p < int(pivots.size()); p++) {
    int c = pivots[p];
    for (int i = 0; i < p; i++) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), w(i, c).get_mpz_t(), w(p, c).get_mpz_t());
      if (sgn(q) != 0) rowadd(i, p, -q);
    }
  }
  IntMatrix out(int(pivots.size()), w.cols);
  for (int i = 0; i < out.rows; i++)
    for (int k = 0; k < w.cols; k++) out(i, k) = w(i, k);
  return out;
}

inline IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, int cols) {
  IntMatrix m(int(rows.size()), cols);
  for (int i = 0; i < m.rows; i++) {
    assert(int(rows[i].size()) == cols);
    for (int j = 0; j < cols; j++) m(i, j) = rows[i][j];
  }
  return m;
}

inline bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
  return hnf_rows(a) == hnf_rows(b);
}

// Basis (rows) of the saturation of the row lattice of m: kernel-of-kernel.
// v lies in the saturation iff v is orthogonal to everything orthogonal to
// the rows (standard dot product), and saturated kernels are what
// kernel_basis produces.
inline std::vector<std::vector<Int>> saturation_basis(const IntMatrix& m) {
  IntMatrix kk = from_rows(kernel_basis(m), m.cols);
  return kernel_basis(kk);
}

// Exact inverse of a matrix with det = +-1.
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
  assert(m.rows == m.cols);
  Int dt = det(m);
  if (dt != 1 && dt != -1) throw std::invalid_argument("inverse_unimodular: det not +-1");
  int n = m.rows;
  // adjugate / det; matrices here are small
  IntMatrix inv(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      IntMatrix minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; r++) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; c++) {
          if (c == i) continue;
          minor(rr, cc) = m(r, c);
          cc++;
        }
        rr++;
      }
      Int cof = det(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv(i, j) = dt == 1 ? cof : -cof;
    }
  return inv;
}

// Solve A x = b over the rationals (unique solution assumed when consistent).
// Returns nullopt when inconsistent; asserts uniqueness is not required (any
// solution of the consistent system is returned, free vars set to 0).
inline std::optional<std::vector<Rat>> solve_rational(const IntMatrix& A,
                                                      const std::vector<Int>& b) {
  int R = A.rows, C = A.cols;
  std::vector<std::vector<Rat>> w(R, std::vector<Rat>(C + 1));
  for (int i = 0; i < R; i++) {
    for (int j = 0; j < C; j++) w[i][j] = Rat(A(i, j));
    w[i][C] = Rat(b[i]);
  }
  std::vector<int> pivot_col(R, -1);
  int pr = 0;
  for (int c = 0; c < C && pr < R; c++) {
    int nz = -1;
    for (int i = pr; i < R; i++)
      if (sgn(w[i][c]) != 0) { nz = i; break; }
    if (nz < 0) continue;
    std::swap(w[pr], w[nz]);
    Rat inv = 1 / w[pr][c];
    for (int j = c; j <= C; j++) w[pr][j] *= inv;
    for (int i = 0; i < R; i++) {
      if (i == pr || sgn(w[i][c]) == 0) continue;
      Rat f = w[i][c];
      for (int j = c; j <= C; j++) w[i][j] -= f * w[pr][j];
    }
    pivot_col[pr] = c;
    pr++;
  }
  for (int i = pr; i < R; i++)
    if (sgn(w[i][C]) != 0) return std::nullopt;
  std::vector<Rat> x(C, Rat(0));
  for (int i = 0; i < pr; i++) x[pivot_col[i]] = w[i][C];
  return x;
}

}  // namespace lcy
