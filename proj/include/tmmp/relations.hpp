#pragma once

#include <string>
#include <vector>

#include "tmmp/cohomology.hpp"
#include "tmmp/exactmath.hpp"
#include "tmmp/presentation.hpp"

namespace tmmp {

/// prod_j mu_j^{left_j} - q^{qexp} prod_j mu_j^{right_j}, with
/// left_j - right_j = <mu_j, degree>.
struct QsrRelation {
  RatVector degree;
  std::vector<Integer> pairings;
  Rational qexp;
  std::vector<Integer> left;
  std::vector<Integer> right;
};

/// Minimal index sets whose normals do not all lie in one maximal cone.
/// Indices that are not rays of the fan form singleton collections.
std::vector<std::vector<Index>> primitive_collections(const FanData& fan, Index k);

QsrRelation qsr_relation(const Presentation& p, const RatVector& degree);

/// One integral degree per primitive collection: the smallest multiple of the
/// primitive relation lying in the integral lattice. Not claimed to generate
/// the whole ideal.
std::vector<RatVector> suggested_degrees(const FanData& fan, const Presentation& p);

std::string to_text(const QsrRelation& rel, const Presentation& p);

/// q^qexp y^exponent
struct QuantumMonomial {
  Rational qexp;
  IntVector exponent;
  bool operator==(const QuantumMonomial& o) const {
    return qexp == o.qexp && exponent.size() == o.exponent.size() && exponent == o.exponent;
  }
};

struct SubstitutionResult {
  QuantumMonomial left;
  QuantumMonomial right;
  bool identical = false;
};

/// Substitutes mu_j -> q^{support_j} y^{nu_j} into both sides.
SubstitutionResult substitute_quantum_embedding(const QsrRelation& rel, const ResidualData& res,
                                                const RatVector& support);

}  // namespace tmmp
