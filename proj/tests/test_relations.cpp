#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "tmmp/relations.hpp"

using namespace tmmp;

namespace {

FanData fan_of(const Presentation& p) {
  auto res = residual(p);
  return build_fan(moment_polytope(p, res), res.torsion);
}

RatVector scalar(Rational x) { return RatVector::Constant(1, x); }

}  // namespace

TEST_CASE("primitive collections") {
  for (long k = 2; k <= 5; ++k) {
    auto pc = primitive_collections(fan_of(fixtures::projective_space(k)), k);
    REQUIRE(pc.size() == 1);
    CHECK(pc[0].size() == static_cast<std::size_t>(k));
  }
  CHECK(primitive_collections(fan_of(fixtures::product_of_lines()), 4) ==
        std::vector<std::vector<Index>>{{0, 1}, {2, 3}});
  CHECK(primitive_collections(fan_of(fixtures::blowup()), 5) ==
        std::vector<std::vector<Index>>{{0, 1}, {0, 2}, {1, 4}, {2, 3}, {3, 4}});
  // the spurious fourth coordinate of the two-torus plane is a singleton
  auto plane = primitive_collections(fan_of(fixtures::plane_two_torus()), 4);
  CHECK(plane == std::vector<std::vector<Index>>{{3}, {0, 1, 2}});
}

TEST_CASE("quantum SR relations") {
  auto p = fixtures::projective_space(4, Rational(2));
  auto rel = qsr_relation(p, scalar(1));
  CHECK(rel.left == std::vector<Integer>{1, 1, 1, 1});
  CHECK(rel.right == std::vector<Integer>{0, 0, 0, 0});
  CHECK(rel.qexp == 2);
  CHECK(to_text(rel, p) == "x1*x2*x3*x4 - q^(2/1)");

  auto tear = fixtures::teardrop();
  auto trel = qsr_relation(tear, scalar(1));
  CHECK(trel.left == std::vector<Integer>{1, 2});
  CHECK(trel.qexp == 3);

  auto zero = qsr_relation(tear, scalar(0));
  CHECK(zero.left == std::vector<Integer>{0, 0});
  CHECK(zero.right == std::vector<Integer>{0, 0});
  CHECK(to_text(zero, tear) == "1 - 1");

  try {
    qsr_relation(p, scalar(Rational(1, 2)));
    FAIL("expected NonIntegralPairing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIntegralPairing);
  }
}

TEST_CASE("suggested degrees") {
  auto p2 = fixtures::projective_space(3);
  auto d2 = suggested_degrees(fan_of(p2), p2);
  REQUIRE(d2.size() == 1);
  CHECK(d2[0] == scalar(1));

  auto pl = fixtures::product_of_lines();
  auto dl = suggested_degrees(fan_of(pl), pl);
  REQUIRE(dl.size() == 2);
  for (const auto& d : dl) {
    auto rel = qsr_relation(pl, d);
    Integer total = 0;
    for (const auto& v : rel.left) total += v;
    CHECK(total == 2);
    CHECK(rel.qexp == 1);
  }

  auto tear = fixtures::teardrop();
  auto dt = suggested_degrees(fan_of(tear), tear);
  REQUIRE(dt.size() == 1);
  auto rel = qsr_relation(tear, dt[0]);
  CHECK(rel.left == std::vector<Integer>{1, 2});
  CHECK(rel.right == std::vector<Integer>{0, 0});

  auto point = fixtures::stacky_point();
  auto dp = suggested_degrees(fan_of(point), point);
  REQUIRE(dp.size() == 1);
  CHECK(qsr_relation(point, dp[0]).left == std::vector<Integer>{2});
}

TEST_CASE("relations satisfy the exact sequence and the substitution identity") {
  std::vector<Presentation> pool = fixtures::all_fixtures();
  std::mt19937 rng(43);
  for (int i = 0; i < 40; ++i) pool.push_back(gen::random_presentation(rng, i % 4 == 0 ? 3 : 2, 7));
  int checked = 0;
  for (const auto& p : pool) {
    auto res = residual(p);
    FanData fan;
    try {
      fan = build_fan(moment_polytope(p, res), res.torsion);
    } catch (const Error&) {
      continue;
    }
    for (const auto& d : suggested_degrees(fan, p)) {
      auto rel = qsr_relation(p, d);
      IntVector sum = IntVector::Zero(res.n);
      Rational q = 0;
      for (Index j = 0; j < p.k(); ++j) {
        REQUIRE(rel.left[j] - rel.right[j] == rel.pairings[j]);
        REQUIRE(rel.left[j] >= 0);
        REQUIRE(rel.right[j] >= 0);
        sum += rel.pairings[j] * res.nu.col(j);
        q += Rational(rel.pairings[j]) * p.support(j);
      }
      REQUIRE(sum.isZero());
      REQUIRE(q == rel.qexp);
      REQUIRE(substitute_quantum_embedding(rel, res, p.support).identical);
      ++checked;
    }
  }
  CHECK(checked > 40);
}
