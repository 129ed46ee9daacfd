#include "tmmp/polytope.hpp"

#include <algorithm>
#include <map>

#include "tmmp/errors.hpp"
#include "tmmp/subsets.hpp"

namespace tmmp {

Rational HPolytope::slack(Index j, const RatVector& point) const {
  Rational s = constants(j);
  for (Index i = 0; i < dim(); ++i)
    if (normals(i, j) != 0 && point(i) != 0) s += point(i) * normals(i, j);
  return s;
}

namespace {

std::vector<Rational> key_of(const RatVector& v) {
  return std::vector<Rational>(v.data(), v.data() + v.size());
}

// {mu : N^T mu >= -b} as A x >= c
std::pair<RatMatrix, RatVector> as_system(const HPolytope& p) {
  return {to_rational(p.normals.transpose()), -p.constants};
}

// Range of the uniform slack s over {<mu, nu_j> + b_j >= s for j in rows}
// restricted by the equalities in `equal`.
bool has_strict_point(const HPolytope& p, const std::vector<Index>& strict,
                      const std::vector<Index>& equal) {
  const Index n = p.dim();
  const Index rows = static_cast<Index>(strict.size() + 2 * equal.size());
  RatMatrix A = RatMatrix::Zero(rows, n + 1);
  RatVector b(rows);
  Index r = 0;
  for (Index j : strict) {
    A(r, 0) = -1;
    for (Index i = 0; i < n; ++i) A(r, i + 1) = p.normals(i, j);
    b(r++) = -p.constants(j);
  }
  for (Index j : equal) {
    for (Index i = 0; i < n; ++i) {
      A(r, i + 1) = p.normals(i, j);
      A(r + 1, i + 1) = -p.normals(i, j);
    }
    b(r) = -p.constants(j);
    b(r + 1) = p.constants(j);
    r += 2;
  }
  if (strict.empty()) return first_coordinate_range(A, b).has_value();
  auto range = first_coordinate_range(A, b);
  return range && (!range->upper || *range->upper > 0);
}

// Same hyperplane with the same orientation: nu_i = l nu_j, b_i = l b_j, l > 0.
bool same_halfspace(const HPolytope& p, Index i, Index j) {
  Rational ratio = 0;
  for (Index r = 0; r < p.dim(); ++r) {
    if (p.normals(r, j) == 0) {
      if (p.normals(r, i) != 0) return false;
      continue;
    }
    Rational q(p.normals(r, i), p.normals(r, j));
    if (ratio == 0) ratio = q;
    else if (q != ratio) return false;
  }
  if (ratio <= 0) return false;
  return p.constants(i) == ratio * p.constants(j);
}


using Wide = __int128;

bool mul_ok(Wide a, Wide b, Wide& out) { return !__builtin_mul_overflow(a, b, &out); }
bool add_ok(Wide a, Wide b, Wide& out) { return !__builtin_add_overflow(a, b, &out); }

Integer to_integer(Wide v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long long>(u >> 64));
  Integer out = (hi << 64) + Integer(static_cast<unsigned long long>(u));
  return neg ? Integer(-out) : out;
}

// Fraction-free determinant; false on overflow.
bool wide_determinant(std::vector<Wide> a, Index n, Wide& det) {
  if (n == 0) {
    det = 1;
    return true;
  }
  Wide sign = 1, prev = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (a[k * n + k] == 0) {
      Index p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) {
        det = 0;
        return true;
      }
      for (Index j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j) {
        Wide x, y;
        if (!mul_ok(a[i * n + j], a[k * n + k], x) || !mul_ok(a[i * n + k], a[k * n + j], y)) return false;
        if (__builtin_sub_overflow(x, y, &x)) return false;
        a[i * n + j] = x / prev;
      }
    prev = a[k * n + k];
  }
  det = sign * a[(n - 1) * n + (n - 1)];
  return true;
}

// Vertex candidates of a polytope whose normals and scaled constants fit in 64 bits.
// With C = D * constants, the candidate point is y / (det * D) and the scaled
// slacks are T_j = det * C_j + <y, nu_j>.
struct WideSystem {
  bool ok = false;
  Index n = 0, m = 0;
  std::vector<Wide> normals;  // column j at j * n
  std::vector<Wide> scaled;
  Integer common = 1;

  explicit WideSystem(const HPolytope& p) : n(p.dim()), m(p.size()) {
    const Integer limit = Integer(1) << 40;
    for (Index j = 0; j < m; ++j) common = lcm(common, Integer(denominator(p.constants(j))));
    for (Index j = 0; j < m; ++j) {
      for (Index i = 0; i < n; ++i) {
        if (abs(p.normals(i, j)) >= limit) return;
        normals.push_back(static_cast<Wide>(p.normals(i, j).convert_to<long long>()));
      }
      const Integer c = numerator(p.constants(j)) * (common / denominator(p.constants(j)));
      if (abs(c) >= limit) return;
      scaled.push_back(static_cast<Wide>(c.convert_to<long long>()));
    }
    ok = true;
  }

  enum class Outcome { Singular, Infeasible, Feasible, Overflow };

  Outcome candidate(const std::vector<Index>& s, Wide& det, std::vector<Wide>& y, std::vector<Wide>& t) const {
    std::vector<Wide> a(static_cast<std::size_t>(n * n));
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) a[r * n + c] = normals[s[r] * n + c];
    if (!wide_determinant(a, n, det)) return Outcome::Overflow;
    if (det == 0) return Outcome::Singular;
    y.assign(static_cast<std::size_t>(n), 0);
    std::vector<Wide> minor(static_cast<std::size_t>((n - 1) * (n - 1)));
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) {
        Index k = 0;
        for (Index i = 0; i < n; ++i) {
          if (i == r) continue;
          for (Index j = 0; j < n; ++j)
            if (j != c) minor[k++] = a[i * n + j];
        }
        Wide cof, term;
        if (!wide_determinant(minor, n - 1, cof)) return Outcome::Overflow;
        if ((r + c) % 2 != 0) cof = -cof;
        // adjugate entry (c, r) times -C_{s_r}
        if (!mul_ok(cof, -scaled[s[r]], term) || !add_ok(y[c], term, y[c])) return Outcome::Overflow;
      }
    t.assign(static_cast<std::size_t>(m), 0);
    const Wide orient = det > 0 ? 1 : -1;
    Outcome result = Outcome::Feasible;
    for (Index j = 0; j < m; ++j) {
      Wide acc;
      if (!mul_ok(det, scaled[j], acc)) return Outcome::Overflow;
      for (Index i = 0; i < n; ++i) {
        Wide term;
        if (!mul_ok(y[i], normals[j * n + i], term) || !add_ok(acc, term, acc)) return Outcome::Overflow;
      }
      t[j] = acc;
      if (acc * orient < 0) result = Outcome::Infeasible;
    }
    return result;
  }
};
}  // namespace

namespace {

// A nonzero pointed cone {x : N^T x >= 0} has an extreme ray cut out by n-1
// independent constraints; each candidate ray is a cofactor vector.
bool recession_cone_is_zero(const IntMatrix& normals) {
  const Index n = normals.rows();
  const Index m = normals.cols();
  if (n == 0) return true;
  if (rank(normals) < n) return false;
  bool zero = true;
  IntMatrix minor(n - 1, n - 1);
  IntVector d(n);
  for_each_subset(m, n - 1, [&](const std::vector<Index>& s) {
    for (Index k = 0; k < n; ++k) {
      for (Index r = 0; r < n - 1; ++r)
        for (Index c = 0, cc = 0; c < n; ++c)
          if (c != k) minor(r, cc++) = normals(c, s[r]);
      d(k) = (k % 2 == 0 ? 1 : -1) * determinant(minor);
    }
    if (std::all_of(d.begin(), d.end(), [](const Integer& x) { return x == 0; })) return true;
    bool nonneg = true, nonpos = true;
    for (Index j = 0; j < m && (nonneg || nonpos); ++j) {
      Integer v = 0;
      for (Index i = 0; i < n; ++i) v += d(i) * normals(i, j);
      nonneg = nonneg && v >= 0;
      nonpos = nonpos && v <= 0;
    }
    zero = !(nonneg || nonpos);
    return zero;
  });
  return zero;
}

}  // namespace

bool is_bounded(const HPolytope& p) {
  thread_local std::map<std::vector<Integer>, bool> memo;
  std::vector<Integer> key{Integer(p.dim()), Integer(p.size())};
  key.insert(key.end(), p.normals.data(), p.normals.data() + p.normals.size());
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  if (memo.size() > 4096) memo.clear();
  const bool bounded = recession_cone_is_zero(p.normals);
  memo.emplace(std::move(key), bounded);
  return bounded;
}

PolytopeCombinatorics solve_polytope(const HPolytope& p) {
  const Index n = p.dim();
  const Index m = p.size();
  PolytopeCombinatorics out;
  out.bounded = is_bounded(p);
  // A pointed polyhedron is nonempty exactly when it has a vertex.
  const bool pointed = n > 0 && rank(p.normals) == n;
  if (n == 0) {
    out.empty = m > 0 && p.constants.minCoeff() < 0;
  } else if (!pointed) {
    auto [A, c] = as_system(p);
    out.empty = !find_feasible_point(A, c).has_value();
  } else {
    out.empty = false;
  }

  if (n == 0) {
    if (!out.empty) {
      Vertex v{RatVector(0), {}};
      for (Index j = 0; j < m; ++j)
        if (p.constants(j) == 0) v.active.push_back(j);
      out.vertices.push_back(std::move(v));
      out.full_dimensional = true;
    }
    for (Index j = 0; j < m; ++j) out.spurious_indices.push_back(j);
    return out;
  }
  if (out.empty) {
    for (Index j = 0; j < m; ++j) out.spurious_indices.push_back(j);
    return out;
  }

  std::map<std::vector<Rational>, std::size_t> seen;
  std::vector<Rational> slacks(static_cast<std::size_t>(m));
  IntMatrix N(n, n), minor(n - 1, n - 1);
  IntMatrix adj(n, n);
  RatVector point(n);
  const WideSystem wide(p);
  Wide wdet;
  std::vector<Wide> wy, wt;
  for_each_subset(m, n, [&](const std::vector<Index>& s) {
    if (wide.ok) {
      const auto outcome = wide.candidate(s, wdet, wy, wt);
      if (outcome == WideSystem::Outcome::Singular || outcome == WideSystem::Outcome::Infeasible) return true;
      if (outcome == WideSystem::Outcome::Feasible) {
        const Integer scale = to_integer(wdet) * wide.common;
        for (Index i = 0; i < n; ++i) point(i) = Rational(to_integer(wy[i]), scale);
        auto key = key_of(point);
        if (seen.count(key)) return true;
        seen.emplace(std::move(key), out.vertices.size());
        Vertex v{point, {}};
        for (Index j = 0; j < m; ++j)
          if (wt[j] == 0) v.active.push_back(j);
        out.vertices.push_back(std::move(v));
        return true;
      }
    }
    for (Index i = 0; i < n; ++i) N.row(i) = p.normals.col(s[i]).transpose();
    const Integer det = determinant(N);
    if (det == 0) return true;
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) {
        for (Index i = 0, ii = 0; i < n; ++i) {
          if (i == r) continue;
          for (Index j = 0, jj = 0; j < n; ++j)
            if (j != c) minor(ii, jj++) = N(i, j);
          ++ii;
        }
        adj(c, r) = ((r + c) % 2 == 0 ? 1 : -1) * determinant(minor);
      }
    for (Index i = 0; i < n; ++i) {
      Rational acc = 0;
      for (Index k = 0; k < n; ++k)
        if (adj(i, k) != 0) acc -= p.constants(s[k]) * adj(i, k);
      point(i) = acc / det;
    }
    for (Index j = 0; j < m; ++j) {
      slacks[j] = p.slack(j, point);
      if (slacks[j] < 0) return true;
    }
    auto key = key_of(point);
    if (seen.count(key)) return true;
    seen.emplace(std::move(key), out.vertices.size());
    Vertex v{point, {}};
    for (Index j = 0; j < m; ++j)
      if (slacks[j] == 0) v.active.push_back(j);
    out.vertices.push_back(std::move(v));
    return true;
  });
  {
    std::vector<std::pair<std::vector<Rational>, Vertex>> keyed;
    keyed.reserve(out.vertices.size());
    for (auto& v : out.vertices) keyed.emplace_back(key_of(v.point), std::move(v));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.vertices.clear();
    for (auto& kv : keyed) out.vertices.push_back(std::move(kv.second));
  }
  if (pointed && out.vertices.empty()) {
    out.empty = true;
    for (Index j = 0; j < m; ++j) out.spurious_indices.push_back(j);
    return out;
  }

  if (out.bounded) {
    std::vector<RatVector> pts;
    for (const auto& v : out.vertices) pts.push_back(v.point);
    out.full_dimensional = affine_dimension(pts) == n;
    for (Index j = 0; j < m; ++j) {
      std::vector<RatVector> on;
      for (const auto& v : out.vertices)
        if (std::find(v.active.begin(), v.active.end(), j) != v.active.end())
          on.push_back(v.point);
      bool facet = out.full_dimensional && affine_dimension(on) == n - 1;
      (facet ? out.facet_indices : out.spurious_indices).push_back(j);
    }
    return out;
  }

  std::vector<Index> all(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) all[j] = j;
  out.full_dimensional = has_strict_point(p, all, {});
  for (Index j = 0; j < m; ++j) {
    std::vector<Index> strict;
    for (Index i = 0; i < m; ++i)
      if (i != j && !same_halfspace(p, i, j)) strict.push_back(i);
    bool facet = out.full_dimensional && has_strict_point(p, strict, {j});
    (facet ? out.facet_indices : out.spurious_indices).push_back(j);
  }
  return out;
}

HPolytope lifted_polytope(const HPolytope& p) {
  const Index n = p.dim();
  const Index m = p.size();
  HPolytope out;
  out.normals = IntMatrix::Zero(n + 1, m + 1);
  out.normals.topLeftCorner(n, m) = p.normals;
  out.normals.row(n).head(m).setConstant(Integer(-1));
  out.normals(n, m) = 1;
  out.constants = RatVector::Zero(m + 1);
  out.constants.head(m) = p.constants;
  return out;
}

HPolytope shifted(const HPolytope& p, const Rational& t) {
  HPolytope out = p;
  for (Index j = 0; j < out.size(); ++j) out.constants(j) -= t;
  return out;
}

RatVector vertex_barycenter(const PolytopeCombinatorics& c) {
  if (c.vertices.empty()) throw Error(ErrorCode::EmptyPolytope, "polytope has no vertices");
  RatVector sum = RatVector::Zero(c.vertices.front().point.size());
  for (const auto& v : c.vertices) sum += v.point;
  return sum / Rational(static_cast<long>(c.vertices.size()));
}

Integer simplex_normalized_volume(const std::vector<IntVector>& points) {
  if (points.empty()) return 0;
  const Index n = points.front().size();
  if (static_cast<Index>(points.size()) != n + 1)
    throw Error(ErrorCode::DegenerateSimplex, "simplex needs exactly n+1 points");
  IntMatrix M(n, n);
  for (Index i = 0; i < n; ++i) M.col(i) = points[i + 1] - points[0];
  return abs(determinant(M));
}

namespace {

// Inward normal of the hyperplane through d points of Q^d (zero if degenerate).
RatVector hyperplane_normal(const std::vector<RatVector>& points, const std::vector<Index>& s) {
  const Index d = points.front().size();
  RatMatrix diffs(d - 1, d);
  for (Index i = 1; i < d; ++i) diffs.row(i - 1) = (points[s[i]] - points[s[0]]).transpose();
  RatVector a(d);
  for (Index c = 0; c < d; ++c) {
    RatMatrix minor(d - 1, d - 1);
    for (Index j = 0, jj = 0; j < d; ++j)
      if (j != c) minor.col(jj++) = diffs.col(j);
    Rational det = determinant(minor);
    a(c) = (c % 2 == 0) ? det : Rational(-det);
  }
  return a;
}

// Coordinates of the points in an affine basis of their span.
std::vector<RatVector> local_coordinates(const std::vector<RatVector>& pts) {
  const Index d = pts.front().size();
  std::vector<RatVector> basis;
  RatMatrix B(d, 0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RatMatrix trial(d, B.cols() + 1);
    trial.leftCols(B.cols()) = B;
    trial.col(B.cols()) = pts[i] - pts[0];
    if (rank(trial) > B.cols()) B = trial;
  }
  std::vector<RatVector> out;
  for (const auto& p : pts) out.push_back(*solve_consistent(B, p - pts[0]));
  return out;
}

}  // namespace

std::vector<HullFacet> hull_facets(const std::vector<RatVector>& points) {
  const Index d = points.front().size();
  const Index m = static_cast<Index>(points.size());
  std::vector<HullFacet> out;
  std::map<std::pair<std::vector<Rational>, Rational>, bool> seen;
  for_each_subset(m, d, [&](const std::vector<Index>& s) {
    RatVector a = hyperplane_normal(points, s);
    if (a.isZero()) return true;
    Rational c = a.dot(points[s[0]]);
    bool above = false, below = false;
    for (const auto& p : points) {
      Rational v = a.dot(p);
      if (v > c) above = true;
      if (v < c) below = true;
    }
    if (above && below) return true;
    if (below) {
      a = -a;
      c = -c;
    }
    Rational scale = 0;
    for (Index i = 0; i < d; ++i)
      if (a(i) != 0) {
        scale = abs(a(i));
        break;
      }
    a /= scale;
    c /= scale;
    auto key = std::make_pair(key_of(a), c);
    if (seen.count(key)) return true;
    seen.emplace(key, true);
    HullFacet f{a, c, {}};
    for (Index i = 0; i < m; ++i)
      if (a.dot(points[i]) == c) f.points.push_back(i);
    out.push_back(std::move(f));
    return true;
  });
  return out;
}

std::vector<std::vector<Index>> triangulate(const std::vector<RatVector>& points) {
  const Index d = points.front().size();
  const Index m = static_cast<Index>(points.size());
  if (d == 0) return {{0}};
  if (d == 1) {
    Index lo = 0, hi = 0;
    for (Index i = 1; i < m; ++i) {
      if (points[i](0) < points[lo](0)) lo = i;
      if (points[i](0) > points[hi](0)) hi = i;
    }
    return {{lo, hi}};
  }
  std::vector<std::vector<Index>> out;
  // pull from point 0
  for (const auto& f : hull_facets(points)) {
    if (std::find(f.points.begin(), f.points.end(), Index{0}) != f.points.end()) continue;
    std::vector<RatVector> sub;
    for (Index i : f.points) sub.push_back(points[i]);
    for (auto simplex : triangulate(local_coordinates(sub))) {
      for (auto& i : simplex) i = f.points[i];
      simplex.push_back(0);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

Integer hull_normalized_volume(const std::vector<IntVector>& points,
                               bool origin_interior_required) {
  if (points.empty()) {
    if (origin_interior_required)
      throw Error(ErrorCode::OriginNotInterior, "empty point set");
    return 0;
  }
  const Index n = points.front().size();
  if (n == 0) return 1;
  std::vector<RatVector> pts;
  for (const auto& p : points) pts.push_back(to_rational(p));
  if (affine_dimension(pts) < n) {
    if (origin_interior_required)
      throw Error(ErrorCode::OriginNotInterior, "hull is not full-dimensional");
    return 0;
  }
  auto facets = hull_facets(pts);
  if (origin_interior_required)
    for (const auto& f : facets)
      if (f.offset >= 0)
        throw Error(ErrorCode::OriginNotInterior, "origin is not interior to the hull");

  RatVector center = RatVector::Zero(n);
  for (const auto& p : pts) center += p;
  center /= Rational(static_cast<long>(pts.size()));

  Rational total = 0;
  for (const auto& f : facets) {
    std::vector<RatVector> sub;
    for (Index i : f.points) sub.push_back(pts[i]);
    for (const auto& simplex : triangulate(local_coordinates(sub))) {
      RatMatrix M(n, n);
      for (Index i = 0; i < n; ++i) M.col(i) = pts[f.points[simplex[i]]] - center;
      total += abs(determinant(M));
    }
  }
  if (!is_integral(total))
    throw Error(ErrorCode::DegenerateSimplex, "normalized volume is not integral");
  return numerator(total);
}

}  // namespace tmmp
