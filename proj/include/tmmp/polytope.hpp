#pragma once

#include <vector>

#include "tmmp/exactmath.hpp"

namespace tmmp {

/// {mu : <mu, normals.col(j)> >= -constants(j)} in dimension normals.rows().
struct HPolytope {
  IntMatrix normals;
  RatVector constants;

  Index dim() const { return normals.rows(); }
  Index size() const { return normals.cols(); }
  Rational slack(Index j, const RatVector& point) const;
};

struct Vertex {
  RatVector point;
  std::vector<Index> active;
};

struct PolytopeCombinatorics {
  std::vector<Vertex> vertices;
  std::vector<Index> facet_indices;
  std::vector<Index> spurious_indices;
  bool empty = true;
  bool bounded = false;
  bool full_dimensional = false;
};

PolytopeCombinatorics solve_polytope(const HPolytope& p);

bool is_bounded(const HPolytope& p);

/// {(mu, t) : <mu, nu_j> + b_j - t >= 0, t >= 0}; the last constraint is t >= 0.
HPolytope lifted_polytope(const HPolytope& p);

/// Slice of the anticanonical flow: every constant lowered by t.
HPolytope shifted(const HPolytope& p, const Rational& t);

RatVector vertex_barycenter(const PolytopeCombinatorics& c);

/// |det(p_1 - p_0, ..., p_n - p_0)| for n+1 points in Z^n.
Integer simplex_normalized_volume(const std::vector<IntVector>& points);

/// n! Vol(conv(points)) for points in Z^n, n <= 4.
/// Throws OriginNotInterior when required and 0 is not an interior point.
Integer hull_normalized_volume(const std::vector<IntVector>& points,
                               bool origin_interior_required);

struct HullFacet {
  RatVector normal;  // inward: <normal, x> >= offset on the hull
  Rational offset;
  std::vector<Index> points;
};

/// Facets of a full-dimensional point configuration in Q^d.
std::vector<HullFacet> hull_facets(const std::vector<RatVector>& points);

/// Simplices (d+1 point indices each) covering a full-dimensional
/// configuration in Q^d without overlap.
std::vector<std::vector<Index>> triangulate(const std::vector<RatVector>& points);

}  // namespace tmmp
