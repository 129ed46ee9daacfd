#pragma once

#include <random>

#include "tmmp/polytope.hpp"
#include "tmmp/presentation.hpp"

namespace tmmp::gen {

/// Normals generating Z^n whose polytopes are bounded, presented through the
/// integer kernel. Support constants are random halves and thirds.
inline Presentation random_presentation(std::mt19937& rng, Index n, Index max_k) {
  std::uniform_int_distribution<int> kd(static_cast<int>(n) + 1, static_cast<int>(max_k));
  std::uniform_int_distribution<int> cd(-2, 2);
  std::uniform_int_distribution<int> sd(0, 12);
  std::uniform_int_distribution<int> den(1, 3);
  for (;;) {
    const Index k = kd(rng);
    IntMatrix nu(n, k);
    for (Index j = 0; j < k; ++j) {
      do {
        for (Index i = 0; i < n; ++i) nu(i, j) = cd(rng);
      } while (nu.col(j).isZero());
    }
    bool unimodular_span = rank(nu) == n;
    if (unimodular_span)
      for (const auto& f : smith_normal_form(nu).invariant_factors)
        if (f != 1) unimodular_span = false;
    if (!unimodular_span) continue;
    HPolytope probe{nu, RatVector::Constant(k, Rational(1))};
    if (!is_bounded(probe)) continue;

    Presentation p;
    p.name = "random";
    p.weights = integer_kernel_projection(IntMatrix(nu.transpose())).P;
    p.support = RatVector(k);
    for (Index j = 0; j < k; ++j) p.support(j) = Rational(sd(rng), 2 * den(rng));
    return p;
  }
}

inline IntMatrix random_unimodular(std::mt19937& rng, Index n) {
  IntMatrix U = IntMatrix::Identity(n, n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), f(-2, 2);
  for (int step = 0; step < 4 * static_cast<int>(n); ++step) {
    Index a = pick(rng), b = pick(rng);
    if (a == b) continue;
    U.row(a) += Integer(f(rng)) * U.row(b);
  }
  if (pick(rng) == 0) U.row(0) = -U.row(0);
  return U;
}

}  // namespace tmmp::gen
