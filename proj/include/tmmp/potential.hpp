#pragma once

#include <string>
#include <vector>

#include "tmmp/exactmath.hpp"
#include "tmmp/presentation.hpp"

namespace tmmp {

/// coeff * q^qexp * y^exponent
struct LaurentTerm {
  IntVector exponent;
  Rational qexp;
  Rational coeff{1};
  Index label = 0;
};

struct LaurentPotential {
  Index n = 0;
  std::vector<LaurentTerm> terms;
};

/// sum_j q^{support_j} y^{nu_j}, one term per coordinate.
LaurentPotential build_potential(const ResidualData& res, const RatVector& support);

/// n! Vol of the Newton polytope; requires 0 in its interior.
Integer kouchnirenko_count(const LaurentPotential& w);

struct FaceSplit {
  LaurentPotential normal_part;
  LaurentPotential residual_part;
};

/// Splits off the terms whose labels lie in `indices` (nonempty).
FaceSplit face_split(const LaurentPotential& w, const std::vector<Index>& indices);

/// Leading q-exponent data of a critical point.
struct TropicalPoint {
  RatVector zeta;
  Integer multiplicity{1};
};

std::string to_string(const LaurentPotential& w);

}  // namespace tmmp
