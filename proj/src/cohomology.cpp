#include "tmmp/cohomology.hpp"

#include <algorithm>

#include "tmmp/errors.hpp"
#include "tmmp/potential.hpp"

namespace tmmp {

FanData build_fan(const HPolytope& p, const std::vector<Integer>& torsion) {
  PolytopeCombinatorics comb = solve_polytope(p);
  if (comb.empty) throw Error(ErrorCode::EmptyPolytope, "moment polytope is empty");
  if (!comb.bounded) throw Error(ErrorCode::UnboundedPolytope, "moment polytope is unbounded");
  if (!comb.full_dimensional)
    throw Error(ErrorCode::LowerDimensionalPolytope, "moment polytope is not full-dimensional");
  FanData fan;
  fan.n = p.dim();
  fan.rays = p.normals;
  fan.torsion = torsion;
  for (std::size_t v = 0; v < comb.vertices.size(); ++v) {
    const auto& vertex = comb.vertices[v];
    if (static_cast<Index>(vertex.active.size()) != fan.n)
      throw Error(ErrorCode::NonSimplicialVertex,
                  "vertex with " + std::to_string(vertex.active.size()) +
                      " active inequalities in dimension " + std::to_string(fan.n) +
                      "; perturb the support constants to make them generic");
    MaxCone cone;
    cone.vertex = static_cast<Index>(v);
    cone.rays = vertex.active;
    cone.ray_matrix = IntMatrix(fan.n, fan.n);
    for (Index i = 0; i < fan.n; ++i) cone.ray_matrix.col(i) = p.normals.col(vertex.active[i]);
    cone.multiplicity = abs(determinant(cone.ray_matrix));
    fan.max_cones.push_back(std::move(cone));
  }
  return fan;
}

Integer quantum_dim(const FanData& fan) {
  if (fan.n == 0) {
    Integer order = 1;
    for (const auto& t : fan.torsion) order *= t;
    return order;
  }
  Integer total = 0;
  for (const auto& c : fan.max_cones) total += c.multiplicity;
  return total;
}

Integer quantum_dim(const HPolytope& p, const std::vector<Integer>& torsion) {
  return quantum_dim(build_fan(p, torsion));
}

std::vector<std::vector<RatVector>> box_elements(const FanData& fan) {
  std::vector<std::vector<RatVector>> out;
  if (fan.n == 0) {
    std::vector<RatVector> group{RatVector::Zero(static_cast<Index>(fan.torsion.size()))};
    for (std::size_t i = 0; i < fan.torsion.size(); ++i) {
      std::vector<RatVector> next;
      for (const auto& g : group)
        for (Integer a = 0; a < fan.torsion[i]; ++a) {
          RatVector h = g;
          h(static_cast<Index>(i)) = Rational(a, fan.torsion[i]);
          next.push_back(h);
        }
      group = std::move(next);
    }
    for (std::size_t c = 0; c < std::max<std::size_t>(fan.max_cones.size(), 1); ++c)
      out.push_back(group);
    return out;
  }
  for (const auto& cone : fan.max_cones) {
    // Z^n / R Z^n has representatives S^{-1} a with 0 <= a_i < d_i
    SmithForm snf = smith_normal_form(cone.ray_matrix);
    IntMatrix Sinv = unimodular_inverse(snf.S);
    RatMatrix R = to_rational(cone.ray_matrix);
    std::vector<IntVector> reps{IntVector::Zero(fan.n)};
    for (Index i = 0; i < fan.n; ++i) {
      std::vector<IntVector> next;
      for (const auto& r : reps)
        for (Integer a = 0; a < snf.invariant_factors[i]; ++a) {
          IntVector s = r;
          s(i) = a;
          next.push_back(s);
        }
      reps = std::move(next);
    }
    std::vector<RatVector> elems;
    for (const auto& a : reps) {
      RatVector c = *solve_rational(R, to_rational(IntVector(Sinv * a)));
      for (Index i = 0; i < fan.n; ++i) c(i) = fractional_part(c(i));
      elems.push_back(c);
    }
    std::sort(elems.begin(), elems.end(), [](const RatVector& x, const RatVector& y) {
      return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(),
                                          y.data() + y.size());
    });
    out.push_back(std::move(elems));
  }
  return out;
}

SemiFanoReport semifano_report(const Presentation& p) {
  ResidualData res = residual(p);
  SemiFanoReport out;
  out.kouchnirenko = kouchnirenko_count(build_potential(res, p.support));
  out.quantum_dim = quantum_dim(moment_polytope(p, res), res.torsion);
  out.semi_fano = out.kouchnirenko == out.quantum_dim;
  return out;
}

bool semifano_indicator(const Presentation& p) { return semifano_report(p).semi_fano; }

}  // namespace tmmp
