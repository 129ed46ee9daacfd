#include "tmmp/relations.hpp"

#include <algorithm>
#include <set>

#include "tmmp/errors.hpp"
#include "tmmp/subsets.hpp"

namespace tmmp {

namespace {

bool is_face(const FanData& fan, const std::vector<Index>& s) {
  for (const auto& cone : fan.max_cones)
    if (std::includes(cone.rays.begin(), cone.rays.end(), s.begin(), s.end())) return true;
  return false;
}

}  // namespace

std::vector<std::vector<Index>> primitive_collections(const FanData& fan, Index k) {
  std::vector<std::vector<Index>> out;
  for (Index size = 1; size <= std::min(k, fan.n + 1); ++size)
    for_each_subset(k, size, [&](const std::vector<Index>& s) {
      if (is_face(fan, s)) return true;
      for (Index drop = 0; drop < size; ++drop) {
        std::vector<Index> sub;
        for (Index i = 0; i < size; ++i)
          if (i != drop) sub.push_back(s[i]);
        if (!is_face(fan, sub)) return true;
      }
      out.push_back(s);
      return true;
    });
  return out;
}

QsrRelation qsr_relation(const Presentation& p, const RatVector& degree) {
  QsrRelation rel;
  rel.degree = degree;
  rel.qexp = 0;
  RatVector pairing = to_rational(p.weights.transpose()) * degree;
  for (Index j = 0; j < p.k(); ++j) {
    if (!is_integral(pairing(j)))
      throw Error(ErrorCode::NonIntegralPairing,
                  "pairing with " + p.label(j) + " is " + to_string(pairing(j)));
    Integer v = numerator(pairing(j));
    rel.pairings.push_back(v);
    rel.left.push_back(v > 0 ? v : Integer(0));
    rel.right.push_back(v < 0 ? Integer(-v) : Integer(0));
    rel.qexp += pairing(j) * p.support(j);
  }
  return rel;
}

std::vector<RatVector> suggested_degrees(const FanData& fan, const Presentation& p) {
  const Index k = p.k();
  std::vector<RatVector> out;
  std::set<std::vector<Rational>> seen;
  for (const auto& collection : primitive_collections(fan, k)) {
    IntVector sum = IntVector::Zero(fan.n);
    for (Index i : collection) sum += fan.rays.col(i);

    std::optional<RatVector> coeffs;
    const MaxCone* host = nullptr;
    for (const auto& cone : fan.max_cones) {
      auto c = solve_rational(to_rational(cone.ray_matrix), to_rational(sum));
      if (c && (c->array() >= Rational(0)).all()) {
        coeffs = c;
        host = &cone;
        break;
      }
    }
    if (!host && fan.n > 0)
      throw Error(ErrorCode::InconsistentRelation, "sum of a primitive collection lies in no cone");

    RatVector a = RatVector::Zero(k);
    for (Index i : collection) a(i) += 1;
    if (host)
      for (Index i = 0; i < fan.n; ++i) a(host->rays[i]) -= (*coeffs)(i);

    auto d = solve_consistent(to_rational(p.weights.transpose()), a);
    if (!d) throw Error(ErrorCode::InconsistentRelation, "relation is not in the weight row space");
    Integer scale = 1;
    for (Index i = 0; i < d->size(); ++i) scale = lcm(scale, denominator((*d)(i)));
    RatVector degree = *d * Rational(scale);
    std::vector<Rational> key(degree.data(), degree.data() + degree.size());
    if (seen.insert(key).second) out.push_back(degree);
  }
  return out;
}

namespace {

std::string monomial_text(const std::vector<Integer>& exps, const Presentation& p) {
  std::string out;
  for (std::size_t j = 0; j < exps.size(); ++j) {
    if (exps[j] == 0) continue;
    std::string f = p.label(static_cast<Index>(j));
    if (exps[j] != 1) f += "^" + exps[j].str();
    out += (out.empty() ? "" : "*") + f;
  }
  return out.empty() ? "1" : out;
}

}  // namespace

std::string to_text(const QsrRelation& rel, const Presentation& p) {
  std::string right = monomial_text(rel.right, p);
  std::string q = rel.qexp == 0 ? "" : "q^(" + to_string(rel.qexp) + ")";
  if (!q.empty()) right = right == "1" ? q : q + "*" + right;
  return monomial_text(rel.left, p) + " - " + right;
}

SubstitutionResult substitute_quantum_embedding(const QsrRelation& rel, const ResidualData& res,
                                                const RatVector& support) {
  SubstitutionResult out;
  out.left = {0, IntVector::Zero(res.n)};
  out.right = {rel.qexp, IntVector::Zero(res.n)};
  for (std::size_t j = 0; j < rel.left.size(); ++j) {
    Index jj = static_cast<Index>(j);
    out.left.qexp += Rational(rel.left[j]) * support(jj);
    out.left.exponent += rel.left[j] * res.nu.col(jj);
    out.right.qexp += Rational(rel.right[j]) * support(jj);
    out.right.exponent += rel.right[j] * res.nu.col(jj);
  }
  out.identical = out.left == out.right;
  return out;
}

}  // namespace tmmp
