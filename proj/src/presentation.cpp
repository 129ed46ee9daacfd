#include "tmmp/presentation.hpp"

#include "tmmp/subsets.hpp"

namespace tmmp {

std::string Presentation::label(Index j) const {
  if (j < static_cast<Index>(labels.size()) && !labels[j].empty()) return labels[j];
  return "x" + std::to_string(j + 1);
}

bool operator==(const Presentation& a, const Presentation& b) {
  return a.name == b.name && a.weights.rows() == b.weights.rows() &&
         a.weights.cols() == b.weights.cols() && a.weights == b.weights &&
         a.support.size() == b.support.size() && a.support == b.support &&
         a.labels == b.labels;
}

std::optional<ErrorCode> ValidationReport::error() const {
  if (!spans) return ErrorCode::WeightsDoNotSpan;
  if (!half_space) return ErrorCode::HalfSpaceViolation;
  if (!nonempty) return ErrorCode::EmptyQuotient;
  return std::nullopt;
}

ValidationReport validate(const Presentation& p) {
  ValidationReport report;
  report.spans = p.k() >= p.r() && rank(p.weights) == p.r();
  if (!report.spans) return report;

  // <xi, mu_j> >= 1 for every weight
  RatMatrix A = to_rational(p.weights.transpose());
  RatVector ones = RatVector::Constant(p.k(), Rational(1));
  report.half_space_witness = find_feasible_point(A, ones);
  report.half_space = report.half_space_witness.has_value();

  ResidualData res = residual(p);
  HPolytope poly = moment_polytope(p, res);
  PolytopeCombinatorics comb = solve_polytope(poly);
  report.nonempty = !comb.empty;
  report.bounded = comb.bounded;
  report.full_dimensional = comb.full_dimensional;
  report.locally_free = report.nonempty;
  for (const auto& v : comb.vertices)
    if (static_cast<Index>(v.active.size()) != res.n) report.locally_free = false;
  return report;
}

void require_valid(const Presentation& p) {
  auto report = validate(p);
  if (auto e = report.error()) {
    switch (*e) {
      case ErrorCode::WeightsDoNotSpan:
        throw Error(*e, "weights do not span the Lie algebra dual");
      case ErrorCode::HalfSpaceViolation:
        throw Error(*e, "weights are not contained in an open half-space");
      default:
        throw Error(*e, "the quotient is empty for this support");
    }
  }
}

ResidualData residual(const Presentation& p) {
  IntMatrix A = p.weights.transpose();
  KernelProjection kp = integer_kernel_projection(A);
  ResidualData out;
  out.n = kp.P.rows();
  out.nu = hermite_normal_form(IntMatrix(-kp.P)).H;
  out.torsion = std::move(kp.torsion);
  return out;
}

HPolytope moment_polytope(const Presentation& p, const ResidualData& res) {
  return HPolytope{res.nu, p.support};
}

RatVector polarization(const Presentation& p) { return to_rational(p.weights) * p.support; }

std::vector<std::vector<Index>> unstable_subsets(const Presentation& p) {
  const Index r = p.r(), k = p.k();
  RatVector omega = polarization(p);
  std::vector<std::vector<Index>> out;
  for (Index size = 0; size <= k; ++size)
    for_each_subset(k, size, [&](const std::vector<Index>& s) {
      if (size == 0) {
        if (!omega.isZero()) out.push_back(s);
        return true;
      }
      // lambda >= 0 with sum lambda_i mu_i = omega
      RatMatrix A(2 * r + size, size);
      RatVector b(2 * r + size);
      A.setZero();
      for (Index i = 0; i < size; ++i)
        for (Index a = 0; a < r; ++a) {
          A(a, i) = p.weights(a, s[i]);
          A(r + a, i) = -p.weights(a, s[i]);
        }
      b.head(r) = omega;
      b.segment(r, r) = -omega;
      for (Index i = 0; i < size; ++i) {
        A(2 * r + i, i) = 1;
        b(2 * r + i) = 0;
      }
      if (!find_feasible_point(A, b)) out.push_back(s);
      return true;
    });
  return out;
}

Presentation center(const Presentation& p, const ResidualData& res) {
  PolytopeCombinatorics comb = solve_polytope(moment_polytope(p, res));
  if (comb.empty) throw Error(ErrorCode::EmptyPolytope, "moment polytope is empty");
  if (!comb.bounded) throw Error(ErrorCode::UnboundedPolytope, "moment polytope is unbounded");
  if (!comb.full_dimensional)
    throw Error(ErrorCode::LowerDimensionalPolytope, "moment polytope is not full-dimensional");
  RatVector c = vertex_barycenter(comb);
  Presentation out = p;
  for (Index j = 0; j < p.k(); ++j)
    for (Index i = 0; i < res.n; ++i) out.support(j) += c(i) * Rational(res.nu(i, j));
  return out;
}

Presentation deform_support(const Presentation& p, const RatVector& alpha) {
  Presentation out = p;
  out.support = alpha;
  return out;
}

}  // namespace tmmp
