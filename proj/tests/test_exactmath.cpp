#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tmmp/errors.hpp"
#include "tmmp/exactmath.hpp"

using namespace tmmp;

namespace {

IntMatrix imat(std::initializer_list<std::initializer_list<long>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
  IntMatrix m(r, c);
  Index i = 0;
  for (auto row : rows) {
    Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

RatVector rvec(std::initializer_list<Rational> v) {
  RatVector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (const auto& x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("hermite normal form small cases") {
  auto m = imat({{2, 4}, {1, 3}});
  auto [H, U] = hermite_normal_form(m);
  CHECK(U * m == H);
  CHECK(abs(oracle::cofactor_det(U)) == 1);
  CHECK(oracle::is_row_hermite(H));
  CHECK(H == imat({{1, 1}, {0, 2}}));

  auto id = hermite_normal_form(IntMatrix::Identity(3, 3));
  CHECK(id.H == IntMatrix::Identity(3, 3));
  CHECK(id.U == IntMatrix::Identity(3, 3));

  IntMatrix z = IntMatrix::Zero(2, 3);
  CHECK(hermite_normal_form(z).H == z);
}

TEST_CASE("hermite normal form on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> dim(1, 5);
    auto m = oracle::random_int_matrix(rng, dim(rng), dim(rng), 6);
    auto [H, U] = hermite_normal_form(m);
    REQUIRE(U * m == H);
    REQUIRE(abs(oracle::cofactor_det(U)) == 1);
    REQUIRE(oracle::is_row_hermite(H));
    // canonical: same row lattice gives the same form
    auto V = hermite_normal_form(oracle::random_int_matrix(rng, m.rows(), m.rows(), 2));
    if (abs(oracle::cofactor_det(V.H)) == 1) {
      auto again = hermite_normal_form(V.H * m);
      REQUIRE(again.H == H);
    }
  }
}

TEST_CASE("smith normal form") {
  CHECK(smith_normal_form(imat({{2}})).invariant_factors == std::vector<Integer>{2});
  CHECK(smith_normal_form(imat({{1}, {2}})).invariant_factors == std::vector<Integer>{1});
  CHECK(smith_normal_form(imat({{2, 0}, {0, 4}})).invariant_factors ==
        std::vector<Integer>{2, 4});
  CHECK(smith_normal_form(imat({{2, 0}, {0, 3}})).invariant_factors ==
        std::vector<Integer>{1, 6});

  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> dim(1, 5);
    auto m = oracle::random_int_matrix(rng, dim(rng), dim(rng), 8);
    auto snf = smith_normal_form(m);
    REQUIRE(snf.S * m * snf.T == snf.D);
    REQUIRE(abs(oracle::cofactor_det(snf.S)) == 1);
    REQUIRE(abs(oracle::cofactor_det(snf.T)) == 1);
    for (Index i = 0; i < snf.D.rows(); ++i)
      for (Index j = 0; j < snf.D.cols(); ++j)
        if (i != j) REQUIRE(snf.D(i, j) == 0);
    const auto& f = snf.invariant_factors;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      REQUIRE(f[i] >= 0);
      if (f[i] == 0) REQUIRE(f[i + 1] == 0);
      else REQUIRE(f[i + 1] % f[i] == 0);
    }
  }
}

TEST_CASE("integer kernel projection") {
  SUBCASE("projective plane weights") {
    auto A = imat({{1}, {1}, {1}});
    auto kp = integer_kernel_projection(A);
    CHECK(kp.P.rows() == 2);
    CHECK(kp.P * A == IntMatrix::Zero(2, 1));
    CHECK(kp.torsion.empty());
    CHECK(smith_normal_form(kp.P).invariant_factors == std::vector<Integer>{1, 1});
  }
  SUBCASE("stacky point") {
    auto kp = integer_kernel_projection(imat({{2}}));
    CHECK(kp.P.rows() == 0);
    CHECK(kp.torsion == std::vector<Integer>{2});
  }
  SUBCASE("teardrop") {
    auto kp = integer_kernel_projection(imat({{1}, {2}}));
    REQUIRE(kp.P.rows() == 1);
    bool plus = kp.P == imat({{2, -1}});
    bool minus = kp.P == imat({{-2, 1}});
    CHECK((plus || minus));
    CHECK(kp.torsion.empty());
  }
  SUBCASE("rank deficiency") {
    try {
      integer_kernel_projection(imat({{1, 2}, {2, 4}, {3, 6}}));
      FAIL("expected RankDeficient");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RankDeficient);
    }
  }
  SUBCASE("random presentations") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      std::uniform_int_distribution<int> kd(2, 7);
      Index k = kd(rng);
      std::uniform_int_distribution<int> rd(1, static_cast<int>(k));
      Index r = rd(rng);
      auto A = oracle::random_int_matrix(rng, k, r, 4);
      if (rank(A) < r) continue;
      auto kp = integer_kernel_projection(A);
      REQUIRE(kp.P.rows() == k - r);
      REQUIRE(kp.P * A == IntMatrix::Zero(k - r, r));
      // stacked [A | P^T] has full rank k
      IntMatrix stacked(k, k);
      stacked << A, kp.P.transpose();
      REQUIRE(rank(stacked) == k);
      // P surjective: all Smith factors equal 1
      for (const auto& f : smith_normal_form(kp.P).invariant_factors) REQUIRE(f == 1);
      Integer order = 1;
      for (const auto& t : kp.torsion) order *= t;
      REQUIRE(oracle::maximal_minor_gcd(A) == order);
    }
  }
}

TEST_CASE("solve rational") {
  RatVector b = rvec({Rational(3, 2), Rational(-1)});
  CHECK(*solve_rational(RatMatrix::Identity(2, 2), b) == b);
  RatMatrix ones(2, 2);
  ones << 1, 1, 1, 1;
  CHECK_FALSE(solve_rational(ones, b).has_value());
  RatMatrix lower(2, 2);
  lower << 1, 0, 1, 1;
  CHECK(*solve_rational(lower, rvec({1, 2})) == rvec({1, 1}));
}

TEST_CASE("determinants agree with cofactor expansion") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> dim(1, 5);
    Index n = dim(rng);
    auto m = oracle::random_int_matrix(rng, n, n, 5);
    REQUIRE(determinant(m) == oracle::cofactor_det(m));
    REQUIRE(determinant(to_rational(m)) == Rational(oracle::cofactor_det(m)));
  }
}

TEST_CASE("fourier motzkin feasibility against box vertex enumeration") {
  std::mt19937 rng(13);
  for (Index n : {2, 3}) {
    int feasible_count = 0;
    const int trials = n == 2 ? 600 : 200;
    for (int trial = 0; trial < trials; ++trial) {
      std::uniform_int_distribution<int> md(1, 7), cd(-4, 4);
      Index m = md(rng);
      RatMatrix A(m + 2 * n, n);
      RatVector b(m + 2 * n);
      for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < n; ++j) A(i, j) = cd(rng);
        b(i) = Rational(cd(rng), 2);
      }
      // box |x_i| <= 10
      for (Index j = 0; j < n; ++j) {
        A.row(m + 2 * j).setZero();
        A.row(m + 2 * j + 1).setZero();
        A(m + 2 * j, j) = 1;
        A(m + 2 * j + 1, j) = -1;
        b(m + 2 * j) = -10;
        b(m + 2 * j + 1) = -10;
      }
      bool oracle_feasible = oracle::box_polytope_nonempty(A, b);
      auto x = find_feasible_point(A, b);
      REQUIRE(x.has_value() == oracle_feasible);
      if (x) {
        ++feasible_count;
        for (Index r = 0; r < A.rows(); ++r) REQUIRE(A.row(r).dot(*x) >= b(r));
      }
    }
    CHECK(feasible_count > trials / 20);
    CHECK(feasible_count < trials - trials / 20);
  }
}

TEST_CASE("rational parsing and rendering") {
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_FALSE(parse_rational("1.5").has_value());
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK_FALSE(parse_rational("").has_value());
  CHECK_FALSE(parse_rational("2/-3").has_value());
  CHECK(to_string(Rational(-2, 4)) == "-1/2");
  CHECK(to_string(Rational(3)) == "3/1");
}
