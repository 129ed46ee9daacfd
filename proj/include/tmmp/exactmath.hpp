#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace tmmp {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

template <typename Derived>
Matrix<Rational> to_rational(const Eigen::MatrixBase<Derived>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

Integer numerator(const Rational& x);
Integer denominator(const Rational& x);
Integer floor_div(const Integer& a, const Integer& b);
Integer floor(const Rational& x);
Rational fractional_part(const Rational& x);
Integer lcm(const Integer& a, const Integer& b);
bool is_integral(const Rational& x);

/// Exact "p/q" rendering; the denominator is always present.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);
/// Accepts "p/q" or "p" with optional sign; anything else yields nullopt.
std::optional<Rational> parse_rational(std::string_view text);

struct HermiteForm {
  IntMatrix H;  // U * m
  IntMatrix U;  // unimodular
};

/// Row-style Hermite normal form: pivots strictly move right, are positive,
/// entries above a pivot lie in [0, pivot), zero rows sit at the bottom.
HermiteForm hermite_normal_form(const IntMatrix& m);

struct SmithForm {
  IntMatrix D;
  IntMatrix S;
  IntMatrix T;
  /// Diagonal of D, length min(rows, cols), each dividing the next.
  std::vector<Integer> invariant_factors;
};

/// S * m * T = D with S, T unimodular.
SmithForm smith_normal_form(const IntMatrix& m);

struct Cokernel {
  Index rank = 0;
  /// Rows give coordinates on Z^rows / saturation of im(A).
  IntMatrix projection;
  /// Columns form a basis of the saturation of im(A).
  IntMatrix image_basis;
  /// Rows give coordinates with respect to image_basis on the saturation.
  IntMatrix image_coordinates;
  std::vector<Integer> torsion;
};

Cokernel cokernel_projection(const IntMatrix& A);

struct KernelProjection {
  IntMatrix P;
  std::vector<Integer> torsion;
};

/// A is k x r of rank r; P is (k - r) x k with P * A = 0 and surjective.
KernelProjection integer_kernel_projection(const IntMatrix& A);

Index rank(const RatMatrix& m);
Index rank(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

/// Unique solution of a square system, nullopt when singular.
std::optional<RatVector> solve_rational(const RatMatrix& M, const RatVector& b);

/// Some solution of a possibly rectangular system, nullopt when inconsistent.
/// Free variables are set to zero.
std::optional<RatVector> solve_consistent(const RatMatrix& M, const RatVector& b);

IntMatrix unimodular_inverse(const IntMatrix& U);

/// Exact feasibility of A x >= b by Fourier-Motzkin elimination.
/// Returns a witness point or nullopt when infeasible.
std::optional<RatVector> find_feasible_point(const RatMatrix& A,
                                             const RatVector& b);

struct Interval {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

/// Range of x_0 over {A x >= b}; nullopt when infeasible.
std::optional<Interval> first_coordinate_range(const RatMatrix& A,
                                               const RatVector& b);

/// Affine dimension of a finite point set (-1 for the empty set).
Index affine_dimension(const std::vector<RatVector>& points);

}  // namespace tmmp
