#include "tmmp/potential.hpp"

#include <algorithm>
#include <stdexcept>

#include "tmmp/polytope.hpp"

namespace tmmp {

LaurentPotential build_potential(const ResidualData& res, const RatVector& support) {
  LaurentPotential w;
  w.n = res.n;
  for (Index j = 0; j < res.nu.cols(); ++j)
    w.terms.push_back(LaurentTerm{res.nu.col(j), support(j), Rational(1), j});
  return w;
}

Integer kouchnirenko_count(const LaurentPotential& w) {
  std::vector<IntVector> exponents;
  for (const auto& t : w.terms) exponents.push_back(t.exponent);
  return hull_normalized_volume(exponents, true);
}

FaceSplit face_split(const LaurentPotential& w, const std::vector<Index>& indices) {
  if (indices.empty()) throw std::invalid_argument("face_split needs a nonempty index set");
  FaceSplit out;
  out.normal_part.n = w.n;
  out.residual_part.n = w.n;
  for (const auto& t : w.terms) {
    bool inside = std::find(indices.begin(), indices.end(), t.label) != indices.end();
    (inside ? out.normal_part : out.residual_part).terms.push_back(t);
  }
  return out;
}

namespace {

std::string exponent_text(const Rational& e) {
  if (is_integral(e)) return numerator(e).str();
  return "(" + to_string(e) + ")";
}

}  // namespace

std::string to_string(const LaurentPotential& w) {
  std::string out;
  for (const auto& t : w.terms) {
    std::vector<std::string> factors;
    if (t.coeff != 1) factors.push_back(is_integral(t.coeff) ? numerator(t.coeff).str() : to_string(t.coeff));
    if (t.qexp == 1) factors.push_back("q");
    else if (t.qexp != 0) factors.push_back("q^" + exponent_text(t.qexp));
    for (Index i = 0; i < t.exponent.size(); ++i) {
      if (t.exponent(i) == 0) continue;
      std::string y = "y" + std::to_string(i + 1);
      if (t.exponent(i) != 1) y += "^" + t.exponent(i).str();
      factors.push_back(y);
    }
    std::string term;
    for (const auto& f : factors) term += (term.empty() ? "" : "*") + f;
    if (term.empty()) term = "1";
    out += (out.empty() ? "" : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace tmmp
