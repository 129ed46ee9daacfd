#include "tmmp/exactmath.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

#include "tmmp/errors.hpp"

namespace tmmp {

Integer numerator(const Rational& x) {
  return boost::multiprecision::numerator(x);
}

Integer denominator(const Rational& x) {
  return boost::multiprecision::denominator(x);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

Integer floor(const Rational& x) { return floor_div(numerator(x), denominator(x)); }

Rational fractional_part(const Rational& x) { return x - Rational(floor(x)); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

bool is_integral(const Rational& x) { return denominator(x) == 1; }

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}

std::optional<Rational> parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s, bool allow_sign) -> std::optional<Integer> {
    std::size_t pos = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) pos = 1;
    if (pos == s.size()) return std::nullopt;
    for (std::size_t i = pos; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    std::string digits(s.substr(pos));
    Integer v(digits);
    if (s[0] == '-') v = -v;
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_int(text, true);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto n = parse_int(text.substr(0, slash), true);
  auto d = parse_int(text.substr(slash + 1), false);
  if (!n || !d || *d == 0) return std::nullopt;
  return Rational(*n, *d);
}

namespace {

struct ExtendedGcd {
  Integer g, x, y;  // g = x*a + y*b, g >= 0
};

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// rows (p, i) <- (x p + y i, -(b/g) p + (a/g) i), a = M(p,c), b = M(i,c)
void combine_rows(IntMatrix& M, IntMatrix& U, Index p, Index i, Index c) {
  Integer a = M(p, c), b = M(i, c);
  auto e = extended_gcd(a, b);
  Integer ag = a / e.g, bg = b / e.g;
  for (IntMatrix* X : {&M, &U}) {
    auto& X_ = *X;
    for (Index j = 0; j < X_.cols(); ++j) {
      Integer u = X_(p, j), v = X_(i, j);
      X_(p, j) = e.x * u + e.y * v;
      X_(i, j) = -bg * u + ag * v;
    }
  }
}

void add_row_multiple(IntMatrix& M, Index target, Index source, const Integer& f) {
  if (f == 0) return;
  for (Index j = 0; j < M.cols(); ++j) M(target, j) += f * M(source, j);
}

void add_col_multiple(IntMatrix& M, Index target, Index source, const Integer& f) {
  if (f == 0) return;
  for (Index i = 0; i < M.rows(); ++i) M(i, target) += f * M(i, source);
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  IntMatrix H = m;
  IntMatrix U = IntMatrix::Identity(m.rows(), m.rows());
  Index pivot = 0;
  for (Index c = 0; c < H.cols() && pivot < H.rows(); ++c) {
    Index nz = -1;
    for (Index i = pivot; i < H.rows(); ++i)
      if (H(i, c) != 0) {
        nz = i;
        break;
      }
    if (nz < 0) continue;
    if (nz != pivot) {
      H.row(pivot).swap(H.row(nz));
      U.row(pivot).swap(U.row(nz));
    }
    for (Index i = pivot + 1; i < H.rows(); ++i)
      if (H(i, c) != 0) combine_rows(H, U, pivot, i, c);
    if (H(pivot, c) < 0) {
      H.row(pivot) = -H.row(pivot);
      U.row(pivot) = -U.row(pivot);
    }
    for (Index i = 0; i < pivot; ++i) {
      Integer q = floor_div(H(i, c), H(pivot, c));
      add_row_multiple(H, i, pivot, -q);
      add_row_multiple(U, i, pivot, -q);
    }
    ++pivot;
  }
  return {std::move(H), std::move(U)};
}

SmithForm smith_normal_form(const IntMatrix& m) {
  IntMatrix D = m;
  IntMatrix S = IntMatrix::Identity(m.rows(), m.rows());
  IntMatrix T = IntMatrix::Identity(m.cols(), m.cols());
  const Index rows = D.rows(), cols = D.cols();
  const Index steps = std::min(rows, cols);

  for (Index t = 0; t < steps; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block goes to (t, t)
      Index bi = -1, bj = -1;
      for (Index i = t; i < rows; ++i)
        for (Index j = t; j < cols; ++j)
          if (D(i, j) != 0 && (bi < 0 || abs(D(i, j)) < abs(D(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) break;
      if (bi != t) {
        D.row(t).swap(D.row(bi));
        S.row(t).swap(S.row(bi));
      }
      if (bj != t) {
        D.col(t).swap(D.col(bj));
        T.col(t).swap(T.col(bj));
      }
      bool clean = true;
      for (Index i = t + 1; i < rows; ++i) {
        Integer q = floor_div(D(i, t), D(t, t));
        add_row_multiple(D, i, t, -q);
        add_row_multiple(S, i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (Index j = t + 1; j < cols; ++j) {
        Integer q = floor_div(D(t, j), D(t, t));
        add_col_multiple(D, j, t, -q);
        add_col_multiple(T, j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      Index bad = -1;
      for (Index i = t + 1; i < rows && bad < 0; ++i)
        for (Index j = t + 1; j < cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row_multiple(D, t, bad, Integer(1));
      add_row_multiple(S, t, bad, Integer(1));
    }
    if (D(t, t) < 0) {
      D.row(t) = -D.row(t);
      S.row(t) = -S.row(t);
    }
  }

  std::vector<Integer> factors;
  for (Index t = 0; t < steps; ++t) factors.push_back(D(t, t));
  return {std::move(D), std::move(S), std::move(T), std::move(factors)};
}

IntMatrix unimodular_inverse(const IntMatrix& U) {
  const Index n = U.rows();
  RatMatrix aug(n, 2 * n);
  aug.leftCols(n) = to_rational(U);
  aug.rightCols(n) = RatMatrix::Identity(n, n);
  for (Index c = 0; c < n; ++c) {
    Index p = c;
    while (p < n && aug(p, c) == 0) ++p;
    if (p == n) throw Error(ErrorCode::RankDeficient, "matrix is not invertible");
    aug.row(c).swap(aug.row(p));
    Rational inv = 1 / aug(c, c);
    aug.row(c) *= inv;
    for (Index i = 0; i < n; ++i)
      if (i != c && aug(i, c) != 0) {
        Rational f = aug(i, c);
        aug.row(i) -= f * aug.row(c);
      }
  }
  IntMatrix out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (!is_integral(aug(i, n + j)))
        throw Error(ErrorCode::RankDeficient, "matrix is not unimodular");
      out(i, j) = numerator(aug(i, n + j));
    }
  return out;
}

Cokernel cokernel_projection(const IntMatrix& A) {
  SmithForm snf = smith_normal_form(A);
  Cokernel out;
  for (const auto& f : snf.invariant_factors)
    if (f != 0) ++out.rank;
  for (Index i = 0; i < out.rank; ++i)
    if (snf.invariant_factors[i] > 1) out.torsion.push_back(snf.invariant_factors[i]);
  const Index k = A.rows();
  out.projection = snf.S.bottomRows(k - out.rank);
  out.image_basis = unimodular_inverse(snf.S).leftCols(out.rank);
  out.image_coordinates = snf.S.topRows(out.rank);
  return out;
}

KernelProjection integer_kernel_projection(const IntMatrix& A) {
  if (rank(A) < A.cols())
    throw Error(ErrorCode::RankDeficient, "weight matrix does not have full rank " +
                                              std::to_string(A.cols()));
  Cokernel c = cokernel_projection(A);
  return {std::move(c.projection), std::move(c.torsion)};
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<Index> row_reduce(RatMatrix& m, Index limit_cols) {
  std::vector<Index> pivots;
  const Index rows = m.rows(), cols = m.cols();
  Index r = 0;
  Rational inv, f, t;
  for (Index c = 0; c < limit_cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (Index j = c; j < cols; ++j) std::swap(m(r, j), m(p, j));
    inv = 1 / m(r, c);
    for (Index j = c; j < cols; ++j)
      if (m(r, j) != 0) m(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      f = m(i, c);
      for (Index j = c; j < cols; ++j)
        if (m(r, j) != 0) {
          t = f * m(r, j);
          m(i, j) -= t;
        }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Index rank(const RatMatrix& m) {
  RatMatrix w = m;
  return static_cast<Index>(row_reduce(w, w.cols()).size());
}

Index rank(const IntMatrix& m) { return rank(to_rational(m)); }

Integer determinant(const IntMatrix& m) {
  const Index n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::RankDeficient, "determinant of non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1, prev = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
  const Index n = m.rows();
  RatMatrix a = m;
  Rational det = 1;
  for (Index c = 0; c < n; ++c) {
    Index p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.row(c).swap(a.row(p));
      det = -det;
    }
    det *= a(c, c);
    for (Index i = c + 1; i < n; ++i)
      if (a(i, c) != 0) {
        Rational f = a(i, c) / a(c, c);
        a.row(i) -= f * a.row(c);
      }
  }
  return det;
}

std::optional<RatVector> solve_consistent(const RatMatrix& M, const RatVector& b) {
  RatMatrix aug(M.rows(), M.cols() + 1);
  aug.leftCols(M.cols()) = M;
  aug.col(M.cols()) = b;
  auto pivots = row_reduce(aug, M.cols());
  for (Index i = static_cast<Index>(pivots.size()); i < aug.rows(); ++i)
    if (aug(i, M.cols()) != 0) return std::nullopt;
  RatVector x = RatVector::Zero(M.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x(pivots[i]) = aug(static_cast<Index>(i), M.cols());
  return x;
}

std::optional<RatVector> solve_rational(const RatMatrix& M, const RatVector& b) {
  if (M.rows() != M.cols() || b.size() != M.rows()) return std::nullopt;
  RatMatrix aug(M.rows(), M.cols() + 1);
  aug.leftCols(M.cols()) = M;
  aug.col(M.cols()) = b;
  if (static_cast<Index>(row_reduce(aug, M.cols()).size()) < M.rows()) return std::nullopt;
  return RatVector(aug.col(M.cols()));
}

namespace {

struct Inequality {
  std::vector<Rational> a;  // a . x >= b
  Rational b;
  std::vector<bool> history;
};

void normalize(Inequality& q) {
  Rational scale = 0;
  for (const auto& v : q.a)
    if (v != 0) {
      scale = abs(v);
      break;
    }
  if (scale == 0) return;
  for (auto& v : q.a) v /= scale;
  q.b /= scale;
}

std::size_t history_size(const Inequality& q) {
  return static_cast<std::size_t>(std::count(q.history.begin(), q.history.end(), true));
}

struct Elimination {
  // stages[v] involves only variables 0..v
  std::vector<std::vector<Inequality>> stages;
  bool feasible = true;
};

Elimination eliminate(const RatMatrix& A, const RatVector& b) {
  const Index n = A.cols();
  const Index m = A.rows();
  std::vector<Inequality> current;
  for (Index i = 0; i < m; ++i) {
    Inequality q;
    q.a.resize(n);
    for (Index j = 0; j < n; ++j) q.a[j] = A(i, j);
    q.b = b(i);
    q.history.assign(m, false);
    q.history[i] = true;
    normalize(q);
    current.push_back(std::move(q));
  }

  Elimination out;
  out.stages.resize(n);
  for (Index v = n - 1; v >= 0; --v) {
    out.stages[v] = current;
    std::vector<const Inequality*> lower, upper;
    std::vector<Inequality> next;
    for (const auto& q : current) {
      if (q.a[v] > 0) lower.push_back(&q);
      else if (q.a[v] < 0) upper.push_back(&q);
      else next.push_back(q);
    }
    const std::size_t eliminated = static_cast<std::size_t>(n - v);
    for (const auto* p : lower)
      for (const auto* u : upper) {
        Inequality q;
        Rational fp = -u->a[v], fu = p->a[v];
        q.a.resize(n);
        for (Index j = 0; j < n; ++j) q.a[j] = fp * p->a[j] + fu * u->a[j];
        q.a[v] = 0;
        q.b = fp * p->b + fu * u->b;
        q.history.resize(m);
        for (Index j = 0; j < m; ++j) q.history[j] = p->history[j] || u->history[j];
        if (history_size(q) > eliminated + 1) continue;
        normalize(q);
        next.push_back(std::move(q));
      }
    // exact duplicates; the copy with the smallest history survives
    std::map<std::pair<std::vector<Rational>, Rational>, std::size_t> seen;
    std::vector<Inequality> dedup;
    for (auto& q : next) {
      auto key = std::make_pair(q.a, q.b);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(std::move(key), dedup.size());
        dedup.push_back(std::move(q));
      } else if (history_size(q) < history_size(dedup[it->second])) {
        dedup[it->second] = std::move(q);
      }
    }
    current = std::move(dedup);
  }
  for (const auto& q : current)
    if (q.b > 0) out.feasible = false;
  return out;
}

Interval bounds_at(const std::vector<Inequality>& stage, Index v, const RatVector& x) {
  Interval r;
  for (const auto& q : stage) {
    if (q.a[v] == 0) continue;
    Rational rest = q.b;
    for (Index j = 0; j < v; ++j) rest -= q.a[j] * x(j);
    Rational bound = rest / q.a[v];
    if (q.a[v] > 0) {
      if (!r.lower || bound > *r.lower) r.lower = bound;
    } else {
      if (!r.upper || bound < *r.upper) r.upper = bound;
    }
  }
  return r;
}

}  // namespace

std::optional<RatVector> find_feasible_point(const RatMatrix& A, const RatVector& b) {
  const Index n = A.cols();
  Elimination e = eliminate(A, b);
  if (!e.feasible) return std::nullopt;
  RatVector x = RatVector::Zero(n);
  for (Index v = 0; v < n; ++v) {
    Interval r = bounds_at(e.stages[v], v, x);
    if ((!r.lower || *r.lower <= 0) && (!r.upper || *r.upper >= 0)) x(v) = 0;
    else if (r.lower) x(v) = *r.lower;
    else x(v) = *r.upper;
  }
  return x;
}

std::optional<Interval> first_coordinate_range(const RatMatrix& A, const RatVector& b) {
  if (A.cols() == 0) throw Error(ErrorCode::RankDeficient, "no coordinates");
  Elimination e = eliminate(A, b);
  if (!e.feasible) return std::nullopt;
  return bounds_at(e.stages[0], 0, RatVector::Zero(A.cols()));
}

Index affine_dimension(const std::vector<RatVector>& points) {
  if (points.empty()) return -1;
  const Index n = points.front().size();
  RatMatrix diffs(static_cast<Index>(points.size()) - 1, n);
  for (std::size_t i = 1; i < points.size(); ++i)
    diffs.row(static_cast<Index>(i) - 1) = (points[i] - points.front()).transpose();
  return rank(diffs);
}

}  // namespace tmmp
