#pragma once

#include <string>
#include <vector>

#include "tmmp/presentation.hpp"

namespace tmmp::fixtures {

inline Presentation make(std::string name, std::vector<std::vector<long>> weight_rows,
                         std::vector<Rational> support) {
  Presentation p;
  p.name = std::move(name);
  const Index r = static_cast<Index>(weight_rows.size());
  const Index k = static_cast<Index>(support.size());
  p.weights = IntMatrix(r, k);
  for (Index a = 0; a < r; ++a)
    for (Index j = 0; j < k; ++j) p.weights(a, j) = weight_rows[a][j];
  p.support = RatVector(k);
  for (Index j = 0; j < k; ++j) p.support(j) = support[j];
  return p;
}

/// P^{k-1} with every support constant c/k.
inline Presentation projective_space(long k, Rational c = 1) {
  return make("P" + std::to_string(k - 1), {std::vector<long>(k, 1)},
              std::vector<Rational>(k, c / k));
}

inline Presentation projective_line() { return projective_space(2); }

inline Presentation teardrop() { return make("teardrop P(1,2)", {{1, 2}}, {1, 1}); }

inline Presentation stacky_point() { return make("stacky point P(2)", {{2}}, {1}); }

/// P^1 presented with a third coordinate whose inequality is spurious.
inline Presentation line_with_extra_term() {
  return make("P1 with extra term", {{1, 0, 2}, {0, 1, 1}}, {1, 0, 1});
}

inline Presentation product_of_lines() {
  return make("P1 x P1", {{1, 1, 0, 0}, {0, 0, 1, 1}}, {0, 1, 0, 1});
}

/// P^2 as a quotient by a 2-torus; the fourth inequality is spurious.
inline Presentation plane_two_torus() {
  return make("P2 via 2-torus", {{-1, 0, 1, 1}, {1, 1, 1, 0}}, {0, 1, 0, 2});
}

/// [0,4] x [0,2] with the corner cut by mu1 + mu2 >= eps.
inline Presentation blowup(Rational eps = Rational(1, 2)) {
  return make("blow-up of P1 x P1", {{1, 1, 0, 0, 0}, {0, 0, 1, 1, 0}, {-1, 0, -1, 0, 1}},
              {0, 4, 0, 2, -eps});
}

/// Hirzebruch surface with rays (1,0), (0,1), (-1,a), (0,-1).
inline Presentation hirzebruch(long a) {
  return make("Hirzebruch F" + std::to_string(a), {{1, -a, 1, 0}, {0, 1, 0, 1}},
              {0, 0, Rational(3, 2), 1});
}

inline std::vector<Presentation> all_fixtures() {
  std::vector<Presentation> out;
  for (long k = 2; k <= 5; ++k) out.push_back(projective_space(k));
  out.push_back(teardrop());
  out.push_back(stacky_point());
  out.push_back(line_with_extra_term());
  out.push_back(product_of_lines());
  out.push_back(plane_two_torus());
  out.push_back(blowup());
  for (long a = 2; a <= 4; ++a) out.push_back(hirzebruch(a));
  return out;
}

}  // namespace tmmp::fixtures
