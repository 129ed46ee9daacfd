#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "tmmp/exactmath.hpp"
#include "tmmp/mmp.hpp"
#include "tmmp/potential.hpp"

namespace tmmp {

using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

inline constexpr double kResidualTolerance = 1e-10;
inline constexpr double kValuationTolerance = 0.05;
inline constexpr int kAberthIterationCap = 200;

/// q^e when it is rational.
std::optional<Rational> exact_power(const Rational& q, const Rational& e);

/// q^e exactly when rational, otherwise a rational within 2^-330 relative error.
Rational rational_power(const Rational& q, const Rational& e);

/// All complex roots of sum_i coeffs[i] z^i (leading coefficient nonzero),
/// by Aberth iteration from a Newton-polygon start with a fixed seed.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

/// Coefficients in the lower variable of Res_{y2}(f, g) for bivariate f, g
/// given as f[i][k] = coefficient of y1^k y2^i.
std::vector<Rational> sylvester_resultant(const std::vector<std::vector<Rational>>& f,
                                          const std::vector<std::vector<Rational>>& g);

struct NumericCritSet {
  Rational q;
  std::vector<std::vector<Complex>> roots;
  /// max_i |y_i dW/dy_i| at each root
  std::vector<double> residuals;
  /// Candidates rejected inside the near-zero band.
  Index discarded = 0;
};

/// Critical points of w in (C^*)^n at a fixed q, for n in {1, 2}.
NumericCritSet solve_fixed_q(const LaurentPotential& w, const Rational& q);

/// max_i |y_i dW/dy_i|
double log_gradient_residual(const LaurentPotential& w, const Rational& q,
                             const std::vector<Complex>& y);

enum class Positivity { Positive, NotPositive };

std::string_view to_string(Positivity p);

struct ValuationEstimate {
  std::vector<double> zeta;
  /// min_j <zeta, nu_j> + omega_j over the terms of the potential.
  double min_exponent = 0;
  Positivity classification = Positivity::NotPositive;
  std::vector<Complex> root_q1;
  std::vector<Complex> root_q2;
};

/// Requires q1 > q2. Roots at q1 are continued in log q down to q2 and
/// matched to the independently computed roots there.
std::vector<ValuationEstimate> estimate_valuations(const LaurentPotential& w, const Rational& q1,
                                                   const Rational& q2,
                                                   double margin = kValuationTolerance);

struct PredictionMatch {
  RatVector point;
  Integer multiplicity;
  Index matched = 0;
  bool ok = false;
};

struct MatchTable {
  std::vector<PredictionMatch> predictions;
  /// Indices of Positive estimates not within tol of any prediction.
  std::vector<Index> unmatched;
  Index positive = 0;
  Index not_positive = 0;
  bool ok = false;
};

MatchTable verify_against_tropical(const std::vector<ValuationEstimate>& estimates,
                                   const TmmpReport& report, double tol = kValuationTolerance);

}  // namespace tmmp
