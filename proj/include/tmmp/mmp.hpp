#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmmp/exactmath.hpp"
#include "tmmp/polytope.hpp"
#include "tmmp/presentation.hpp"

namespace tmmp {

enum class TransitionKind { Flip, DivisorialContraction, Fibration, FibrationOverPoint };

std::string_view to_string(TransitionKind kind);

struct Classification {
  TransitionKind kind = TransitionKind::Flip;
  /// Vertices of the flipping simplex whose opposite facet half-space
  /// excludes 0 (plus) or contains it (minus), as indices into S.
  std::vector<Index> plus;
  std::vector<Index> minus;
  Integer jump;
};

/// Classifies the wall whose active normals are the columns `active` of nu.
Classification classify_transition(const std::vector<Index>& active, const IntMatrix& nu);

struct TmmpReport;

struct FibrationData {
  std::vector<Index> fiber_indices;
  /// Fiber normals in a basis of the saturated fiber lattice.
  IntMatrix fiber_rays;
  Integer fiber_dim;
  /// Quotient map onto the base lattice (rows in Hermite normal form).
  IntMatrix base_projection;
  /// Base point mu = base_origin + base_projection^T lambda.
  RatVector base_origin;
  HPolytope base;
  /// Original inequality index of each base normal.
  std::vector<Index> base_labels;
  std::shared_ptr<const TmmpReport> base_report;
};

struct Transition {
  Rational time;
  RatVector point;
  std::vector<Index> active;
  TransitionKind kind = TransitionKind::Flip;
  std::vector<Index> plus;
  std::vector<Index> minus;
  Integer jump;
  /// Quantum dimension of the chambers on either side (flips and contractions).
  Integer dim_before;
  Integer dim_after;
  std::optional<FibrationData> fibration;
};

struct LedgerEntry {
  Rational time;
  /// Terminal times of the enclosing programs, outermost first; empty at top level.
  std::vector<Rational> parent_times;
  Integer multiplicity;
};

struct EigenValuation {
  Rational time;
  Integer multiplicity;
};

struct FiberPrediction {
  RatVector point;
  Integer multiplicity;
  std::string label;
};

struct TmmpReport {
  Index n = 0;
  Integer initial_dim;
  std::vector<Transition> transitions;
  std::vector<LedgerEntry> ledger;
  std::vector<EigenValuation> eigen_valuations;
  std::vector<FiberPrediction> fibers;
};

TmmpReport run_tmmp(const Presentation& p, const ResidualData& res);
TmmpReport run_tmmp(const HPolytope& polytope, const std::vector<Integer>& torsion);

struct LedgerCheck {
  bool ok = false;
  Integer expected;
  Integer total;
  Integer discrepancy;
  /// Fiber multiplicities add up to the initial dimension.
  bool fibers_ok = false;
  /// Every flip and contraction lowers the running dimension by its jump.
  bool dims_ok = false;
};

LedgerCheck check_ledger(const TmmpReport& report);

/// support_j + (j + 1) * delta, the deterministic perturbation offered for
/// non-generic support constants.
RatVector suggest_perturbation(const RatVector& support, const Rational& delta);

inline constexpr std::string_view kNonDisplaceableLabel = "predicted non-displaceable";

}  // namespace tmmp
