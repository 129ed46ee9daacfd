#pragma once

#include <vector>

#include "tmmp/exactmath.hpp"
#include "tmmp/polytope.hpp"
#include "tmmp/presentation.hpp"

namespace tmmp {

struct MaxCone {
  Index vertex = 0;
  std::vector<Index> rays;
  IntMatrix ray_matrix;  // n x n, columns are the rays
  Integer multiplicity;  // |det(ray_matrix)|
};

struct FanData {
  Index n = 0;
  IntMatrix rays;  // all normals, including spurious ones
  std::vector<MaxCone> max_cones;
  std::vector<Integer> torsion;
};

/// Normal fan of a bounded full-dimensional simple polytope, one maximal
/// cone per vertex (sorted by vertex).
FanData build_fan(const HPolytope& p, const std::vector<Integer>& torsion = {});

/// Sum of cone multiplicities; for n = 0 the order of the torsion group.
Integer quantum_dim(const HPolytope& p, const std::vector<Integer>& torsion);
Integer quantum_dim(const FanData& fan);

/// Per cone: coefficient vectors in [0,1)^n of the lattice points in the
/// half-open parallelepiped spanned by its rays. For n = 0 the elements of
/// the torsion group.
std::vector<std::vector<RatVector>> box_elements(const FanData& fan);

struct SemiFanoReport {
  Integer kouchnirenko;
  Integer quantum_dim;
  bool semi_fano = false;
};

SemiFanoReport semifano_report(const Presentation& p);

/// True iff the Kouchnirenko count equals the quantum dimension.
bool semifano_indicator(const Presentation& p);

}  // namespace tmmp
