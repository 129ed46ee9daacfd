#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tmmp {

enum class ErrorCode {
  RankDeficient,
  HalfSpaceViolation,
  WeightsDoNotSpan,
  EmptyQuotient,
  EmptyPolytope,
  LowerDimensionalPolytope,
  UnboundedPolytope,
  OriginNotInterior,
  NonSimplicialVertex,
  NonIntegralPairing,
  InconsistentRelation,
  NonGenericClass,
  DegenerateSimplex,
  RootFindingFailure,
  SpuriousRootAmbiguity,
  MatchingAmbiguity,
  SchemaError,
  NonRationalValue,
  UnsupportedDimension,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tmmp
