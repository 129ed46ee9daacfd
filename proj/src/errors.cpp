#include "tmmp/errors.hpp"

namespace tmmp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::HalfSpaceViolation: return "HalfSpaceViolation";
    case ErrorCode::WeightsDoNotSpan: return "WeightsDoNotSpan";
    case ErrorCode::EmptyQuotient: return "EmptyQuotient";
    case ErrorCode::EmptyPolytope: return "EmptyPolytope";
    case ErrorCode::LowerDimensionalPolytope: return "LowerDimensionalPolytope";
    case ErrorCode::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::NonSimplicialVertex: return "NonSimplicialVertex";
    case ErrorCode::NonIntegralPairing: return "NonIntegralPairing";
    case ErrorCode::InconsistentRelation: return "InconsistentRelation";
    case ErrorCode::NonGenericClass: return "NonGenericClass";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::RootFindingFailure: return "RootFindingFailure";
    case ErrorCode::SpuriousRootAmbiguity: return "SpuriousRootAmbiguity";
    case ErrorCode::MatchingAmbiguity: return "MatchingAmbiguity";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::NonRationalValue: return "NonRationalValue";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
  }
  return "Unknown";
}

}  // namespace tmmp
