#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "tmmp/presentation.hpp"

using namespace tmmp;

namespace {

// Is there U in GL(n, Z) with U * a == b? Brute force over small entries.
bool gl2_equivalent(const IntMatrix& a, const IntMatrix& b) {
  for (int u00 = -2; u00 <= 2; ++u00)
    for (int u01 = -2; u01 <= 2; ++u01)
      for (int u10 = -2; u10 <= 2; ++u10)
        for (int u11 = -2; u11 <= 2; ++u11) {
          if (std::abs(u00 * u11 - u01 * u10) != 1) continue;
          IntMatrix U(2, 2);
          U << u00, u01, u10, u11;
          if (U * a == b) return true;
        }
  return false;
}

}  // namespace

TEST_CASE("validation") {
  CHECK(validate(fixtures::make("", {{1, 2}}, {1, 1})).ok());
  auto opposite = validate(fixtures::make("", {{1, -1}}, {1, 1}));
  CHECK(opposite.error() == ErrorCode::HalfSpaceViolation);
  auto f2 = fixtures::make("", {{0, -2, 1, 1}, {1, 1, 0, 0}}, {1, Rational(1, 3), 0, 2});
  auto report = validate(f2);
  CHECK(report.ok());
  REQUIRE(report.half_space_witness);
  for (Index j = 0; j < 4; ++j) {
    Rational pairing = 0;
    for (Index a = 0; a < 2; ++a) pairing += Rational(f2.weights(a, j)) * (*report.half_space_witness)(a);
    CHECK(pairing >= 1);
  }
  CHECK(report.bounded);
  CHECK(report.locally_free);

  CHECK(validate(fixtures::make("", {{1, 2}, {2, 4}}, {1, 1})).error() ==
        ErrorCode::WeightsDoNotSpan);
  CHECK(validate(fixtures::make("", {{1, 1}}, {-1, 0})).error() == ErrorCode::EmptyQuotient);
  CHECK_THROWS_AS(require_valid(fixtures::make("", {{1, -1}}, {1, 1})), Error);
  CHECK(validate(fixtures::stacky_point()).ok());
}

TEST_CASE("residual data of the fixtures") {
  SUBCASE("product of lines") {
    auto res = residual(fixtures::product_of_lines());
    IntMatrix expected(2, 4);
    expected << 1, -1, 0, 0, 0, 0, 1, -1;
    CHECK(gl2_equivalent(res.nu, expected));
    CHECK(res.nu == expected);
  }
  SUBCASE("teardrop") {
    auto res = residual(fixtures::teardrop());
    CHECK(res.n == 1);
    IntMatrix expected(1, 2);
    expected << 2, -1;
    CHECK(res.nu == expected);
    CHECK(res.torsion.empty());
  }
  SUBCASE("stacky point") {
    auto res = residual(fixtures::stacky_point());
    CHECK(res.n == 0);
    CHECK(res.torsion == std::vector<Integer>{2});
  }
  SUBCASE("blow-up lands in the expected basis") {
    auto res = residual(fixtures::blowup());
    IntMatrix expected(2, 5);
    expected << 1, -1, 0, 0, 1, 0, 0, 1, -1, 1;
    CHECK(res.nu == expected);
  }
  SUBCASE("two-torus plane") {
    auto res = residual(fixtures::plane_two_torus());
    IntMatrix expected(2, 4);
    expected << 1, -1, 0, 1, 0, -1, 1, -1;
    CHECK(gl2_equivalent(res.nu, expected));
  }
}

TEST_CASE("residual invariants on random presentations") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    Index n = trial % 4 == 0 ? 3 : 2;
    auto p = gen::random_presentation(rng, n, 7);
    auto res = residual(p);
    REQUIRE(res.n == n);
    REQUIRE(res.nu * p.weights.transpose() == IntMatrix::Zero(n, p.r()));
    for (const auto& f : smith_normal_form(res.nu).invariant_factors) REQUIRE(f == 1);
    Presentation q = p;
    q.weights = gen::random_unimodular(rng, p.r()) * p.weights;
    REQUIRE(residual(q).nu == res.nu);
  }
}

TEST_CASE("centering") {
  auto square = fixtures::product_of_lines();
  auto centered = center(square, residual(square));
  CHECK(centered.support == RatVector::Constant(4, Rational(1, 2)));
  CHECK(center(centered, residual(centered)).support == centered.support);

  Rational c(5, 2);
  auto plane = fixtures::make("", {{1, 1, 1}}, {0, 0, c});
  auto res = residual(plane);
  auto shifted_plane = center(plane, res);
  CHECK(shifted_plane.support == RatVector::Constant(3, c / 3));
  auto comb = solve_polytope(moment_polytope(plane, res));
  RatVector third = RatVector::Zero(2);
  for (const auto& v : comb.vertices) third += v.point / 3;
  CHECK(vertex_barycenter(comb) == third);

  auto empty = fixtures::make("", {{1, 1}}, {-1, 0});
  CHECK_THROWS_AS(center(empty, residual(empty)), Error);

  std::mt19937 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = gen::random_presentation(rng, 2, 6);
    auto r = residual(p);
    auto comb2 = solve_polytope(moment_polytope(p, r));
    if (comb2.empty || !comb2.full_dimensional) continue;
    auto once = center(p, r);
    REQUIRE(center(once, r).support == once.support);
    REQUIRE(vertex_barycenter(solve_polytope(moment_polytope(once, r))).isZero());
  }
}

TEST_CASE("support deformation") {
  auto p = fixtures::blowup();
  CHECK(deform_support(p, p.support) == p);
  auto a = fixtures::blowup(Rational(1, 2));
  auto b = deform_support(a, fixtures::blowup(Rational(3, 2)).support);
  CHECK(b.support(4) == Rational(-3, 2));
  CHECK(b.weights == a.weights);

  // shifting every constant by c is the flow at time -c
  Rational c(1, 3);
  auto res = residual(p);
  auto deformed = deform_support(p, p.support + RatVector::Constant(p.k(), c));
  auto via_flow = shifted(moment_polytope(p, res), -c);
  CHECK(moment_polytope(deformed, res).constants == via_flow.constants);
}

TEST_CASE("unstable subsets") {
  auto sets = unstable_subsets(fixtures::projective_space(4));
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].empty());

  // product of lines: unstable iff one of the pairs is missing entirely
  auto pl = unstable_subsets(fixtures::product_of_lines());
  for (const auto& s : pl) {
    bool first = false, second = false;
    for (Index j : s) (j < 2 ? first : second) = true;
    CHECK_FALSE((first && second));
  }
  CHECK(pl.size() == 7);  // subsets of {0,1} or of {2,3}: 4 + 4 - 1
}
