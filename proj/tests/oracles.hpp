#pragma once
// Independent checkers used by the unit tests. Nothing here calls into the
// library routine it is used to check.

#include <random>
#include <vector>

#include "tmmp/exactmath.hpp"

namespace tmmp::oracle {

inline bool is_row_hermite(const IntMatrix& H) {
  Index last_pivot = -1;
  bool zero_seen = false;
  for (Index i = 0; i < H.rows(); ++i) {
    Index c = 0;
    while (c < H.cols() && H(i, c) == 0) ++c;
    if (c == H.cols()) {
      zero_seen = true;
      continue;
    }
    if (zero_seen || c <= last_pivot || H(i, c) <= 0) return false;
    for (Index r = i + 1; r < H.rows(); ++r)
      if (H(r, c) != 0) return false;
    for (Index r = 0; r < i; ++r)
      if (H(r, c) < 0 || H(r, c) >= H(i, c)) return false;
    last_pivot = c;
  }
  return true;
}

// Cofactor expansion; fine for the tiny sizes used in tests.
inline Integer cofactor_det(const IntMatrix& m) {
  const Index n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (Index j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r)
      for (Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    Integer term = m(0, j) * cofactor_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline IntMatrix random_int_matrix(std::mt19937& rng, Index rows, Index cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline Integer maximal_minor_gcd(const IntMatrix& A) {
  // A is k x r; gcd over all r-row subsets
  const Index k = A.rows(), r = A.cols();
  Integer g = 0;
  std::vector<Index> idx(r);
  auto rec = [&](auto&& self, Index start, Index depth) -> void {
    if (depth == r) {
      IntMatrix minor(r, r);
      for (Index i = 0; i < r; ++i) minor.row(i) = A.row(idx[i]);
      g = gcd(g, abs(cofactor_det(minor)));
      return;
    }
    for (Index i = start; i < k; ++i) {
      idx[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return g;
}

// A bounded polyhedron {A x >= b} is nonempty iff some n-subset of tight
// constraints yields a feasible vertex.
inline bool box_polytope_nonempty(const RatMatrix& A, const RatVector& b) {
  const Index m = A.rows(), n = A.cols();
  std::vector<Index> idx(n);
  bool found = false;
  auto rec = [&](auto&& self, Index start, Index depth) -> void {
    if (found) return;
    if (depth == n) {
      RatMatrix M(n, n + 1);
      for (Index i = 0; i < n; ++i) {
        M.row(i).head(n) = A.row(idx[i]);
        M(i, n) = b(idx[i]);
      }
      // Gauss-Jordan
      for (Index c = 0; c < n; ++c) {
        Index p = c;
        while (p < n && M(p, c) == 0) ++p;
        if (p == n) return;
        M.row(c).swap(M.row(p));
        Rational inv = 1 / M(c, c);
        M.row(c) *= inv;
        for (Index i = 0; i < n; ++i)
          if (i != c) {
            Rational f = M(i, c);
            M.row(i) -= f * M.row(c);
          }
      }
      RatVector x = M.col(n);
      for (Index i = 0; i < m; ++i)
        if (A.row(i).dot(x) < b(i)) return;
      found = true;
      return;
    }
    for (Index i = start; i < m; ++i) {
      idx[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return found;
}

// Twice the signed area of a polygon given in order.
inline Rational shoelace2(const std::vector<std::pair<long, long>>& pts) {
  Rational s = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto [x1, y1] = pts[i];
    auto [x2, y2] = pts[(i + 1) % pts.size()];
    s += Rational(x1 * y2 - x2 * y1);
  }
  return abs(s);
}

}  // namespace tmmp::oracle
