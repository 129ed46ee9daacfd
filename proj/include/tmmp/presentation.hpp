#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmmp/errors.hpp"
#include "tmmp/exactmath.hpp"
#include "tmmp/polytope.hpp"

namespace tmmp {

/// Weights of a torus acting on C^k (column j is the weight of coordinate j)
/// together with the support constants positioning each inequality.
struct Presentation {
  std::string name;
  IntMatrix weights;  // r x k
  RatVector support;  // k
  std::vector<std::string> labels;

  Index r() const { return weights.rows(); }
  Index k() const { return weights.cols(); }
  std::string label(Index j) const;
};

bool operator==(const Presentation& a, const Presentation& b);

/// Residual torus data. Column j of nu is the image of -e_j, so the moment
/// polytope reads <mu, nu_j> >= -support_j.
struct ResidualData {
  Index n = 0;
  IntMatrix nu;  // n x k, rows in Hermite normal form
  std::vector<Integer> torsion;
};

struct ValidationReport {
  bool spans = false;
  bool half_space = false;
  std::optional<RatVector> half_space_witness;
  bool nonempty = false;
  bool bounded = false;
  bool full_dimensional = false;
  bool locally_free = false;

  std::optional<ErrorCode> error() const;
  bool ok() const { return !error().has_value(); }
};

ValidationReport validate(const Presentation& p);

/// Throws the first error recorded by validate.
void require_valid(const Presentation& p);

ResidualData residual(const Presentation& p);

HPolytope moment_polytope(const Presentation& p, const ResidualData& res);

/// The polarization class: weights * support.
RatVector polarization(const Presentation& p);

/// Index sets I whose weights do not have the polarization in their
/// nonnegative span. Exponential in k.
std::vector<std::vector<Index>> unstable_subsets(const Presentation& p);

/// Shifts support_j by <c, nu_j> with c the vertex barycenter of the moment
/// polytope, so 0 becomes interior.
Presentation center(const Presentation& p, const ResidualData& res);

Presentation deform_support(const Presentation& p, const RatVector& alpha);

}  // namespace tmmp
