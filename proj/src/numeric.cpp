#include "tmmp/numeric.hpp"

#include <gmp.h>

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "tmmp/errors.hpp"

namespace tmmp {

namespace mp = boost::multiprecision;

namespace {

using Wide = mp::number<mp::cpp_bin_float<120>>;
using RatPoly = std::vector<Rational>;
using Bivariate = std::vector<std::vector<Rational>>;  // [y2 power][y1 power]

template <class F>
F to_float(const Rational& x) {
  return F(numerator(x).str()) / F(denominator(x).str());
}

Real to_real(const Rational& x) { return to_float<Real>(x); }

std::optional<Integer> exact_root(const Integer& x, unsigned long k) {
  Integer r;
  if (mpz_root(r.backend().data(), x.backend().data(), k) == 0) return std::nullopt;
  return r;
}

Integer power_of_two(long e) { return mp::pow(Integer(2), static_cast<unsigned>(e)); }

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

RatPoly divide_exact(RatPoly a, const RatPoly& b) {
  if (a.empty()) return {};
  RatPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  for (std::size_t i = q.size(); i-- > 0;) {
    const Rational c = a[i + b.size() - 1] / b.back();
    q[i] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  trim(a);
  if (!a.empty()) throw std::logic_error("inexact polynomial division");
  trim(q);
  return q;
}

RatPoly bareiss_determinant(std::vector<std::vector<RatPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return {Rational(1)};
  bool negate = false;
  RatPoly prev{Rational(1)};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].empty()) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot][k].empty()) ++pivot;
      if (pivot == n) return {};
      std::swap(m[k], m[pivot]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = divide_exact(sub(mul(m[k][k], m[i][j]), mul(m[i][k], m[k][j])), prev);
      }
      m[i][k].clear();
    }
    prev = m[k][k];
  }
  RatPoly det = m[n - 1][n - 1];
  if (negate) {
    for (auto& c : det) c = -c;
  }
  return det;
}

Index y2_degree(const Bivariate& f) {
  Index d = -1;
  for (std::size_t i = 0; i < f.size(); ++i) {
    bool nonzero = false;
    for (const auto& c : f[i]) nonzero = nonzero || c != 0;
    if (nonzero) d = static_cast<Index>(i);
  }
  return d;
}

Complex ipow(const Complex& z, long e) {
  Complex out(1);
  Complex base = e < 0 ? Complex(1) / z : z;
  for (unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e); k; k >>= 1) {
    if (k & 1) out *= base;
    base *= base;
  }
  return out;
}

Complex horner(const std::vector<Complex>& c, const Complex& z) {
  Complex acc(0);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

/// Numerical view of a potential: coefficients as functions of s = log q.
struct Terms {
  Index n = 0;
  std::vector<std::vector<long>> exponent;
  std::vector<Real> qexp;
  std::vector<Real> coeff;

  explicit Terms(const LaurentPotential& w) : n(w.n) {
    for (const auto& t : w.terms) {
      std::vector<long> a(static_cast<std::size_t>(w.n));
      for (Index i = 0; i < w.n; ++i) a[i] = t.exponent(i).convert_to<long>();
      exponent.push_back(std::move(a));
      qexp.push_back(to_real(t.qexp));
      coeff.push_back(to_real(t.coeff));
    }
  }

  std::vector<Complex> values(const Real& s, const std::vector<Complex>& y) const {
    std::vector<Complex> out;
    for (std::size_t j = 0; j < exponent.size(); ++j) {
      Complex v(coeff[j] * mp::exp(qexp[j] * s));
      for (Index i = 0; i < n; ++i) v *= ipow(y[i], exponent[j][i]);
      out.push_back(v);
    }
    return out;
  }

  std::vector<Complex> gradient(const std::vector<Complex>& vals) const {
    std::vector<Complex> g(static_cast<std::size_t>(n), Complex(0));
    for (std::size_t j = 0; j < vals.size(); ++j) {
      for (Index i = 0; i < n; ++i) {
        if (exponent[j][i]) g[i] += Real(exponent[j][i]) * vals[j];
      }
    }
    return g;
  }
};

/// Solves the (n <= 2) system J x = b; false when singular.
bool solve_small(const std::vector<std::vector<Complex>>& J, const std::vector<Complex>& b,
                 std::vector<Complex>& x) {
  if (J.size() == 1) {
    if (J[0][0] == Complex(0)) return false;
    x = {b[0] / J[0][0]};
    return true;
  }
  const Complex det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  if (det == Complex(0)) return false;
  x = {(b[0] * J[1][1] - J[0][1] * b[1]) / det, (J[0][0] * b[1] - J[1][0] * b[0]) / det};
  return true;
}

std::vector<std::vector<Complex>> hessian(const Terms& t, const std::vector<Complex>& vals) {
  std::vector<std::vector<Complex>> J(static_cast<std::size_t>(t.n),
                                      std::vector<Complex>(static_cast<std::size_t>(t.n), Complex(0)));
  for (std::size_t j = 0; j < vals.size(); ++j) {
    for (Index a = 0; a < t.n; ++a) {
      for (Index b = 0; b < t.n; ++b) {
        const long w = t.exponent[j][a] * t.exponent[j][b];
        if (w) J[a][b] += Real(w) * vals[j];
      }
    }
  }
  return J;
}

Real max_abs(const std::vector<Complex>& v) {
  Real m = 0;
  for (const auto& z : v) m = std::max<Real>(m, mp::abs(z));
  return m;
}

/// Newton iteration on y_i dW/dy_i = 0 in the coordinates u = log y.
bool polish(const Terms& t, const Real& s, std::vector<Complex>& y, int max_iterations) {
  static const Real step_tolerance("1e-38");
  for (int it = 0; it < max_iterations; ++it) {
    const auto vals = t.values(s, y);
    std::vector<Complex> delta;
    if (!solve_small(hessian(t, vals), t.gradient(vals), delta)) return false;
    for (Index i = 0; i < t.n; ++i) y[i] *= mp::exp(-delta[i]);
    const Real size = max_abs(delta);
    if (!mp::isfinite(size)) return false;
    if (size < step_tolerance) return true;
  }
  return false;
}

double residual_at(const Terms& t, const Real& s, const std::vector<Complex>& y) {
  const Real r = max_abs(t.gradient(t.values(s, y)));
  return mp::isfinite(r) ? r.convert_to<double>() : std::numeric_limits<double>::infinity();
}

Real log_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Real d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max<Real>(d, mp::abs(mp::log(a[i] / b[i])));
  return d;
}

bool same_root(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  static const Real tol("1e-20");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (mp::abs(a[i] - b[i]) > tol * mp::abs(a[i])) return false;
  }
  return true;
}

/// Log-derivative polynomials y_i dW/dy_i with monomial denominators cleared.
Bivariate cleared_log_derivative(const LaurentPotential& w, const std::vector<Rational>& coeff,
                                 Index var) {
  std::map<std::pair<long, long>, Rational> terms;
  for (std::size_t j = 0; j < w.terms.size(); ++j) {
    const auto& a = w.terms[j].exponent;
    const long ai = a(var).convert_to<long>();
    if (ai == 0) continue;
    const long e1 = a(0).convert_to<long>();
    const long e2 = w.n > 1 ? a(1).convert_to<long>() : 0;
    terms[{e1, e2}] += Rational(ai) * coeff[j];
  }
  long m1 = 0, m2 = 0, top1 = 0, top2 = 0;
  bool first = true;
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second == 0) {
      it = terms.erase(it);
      continue;
    }
    const auto [e1, e2] = it->first;
    if (first) {
      m1 = top1 = e1;
      m2 = top2 = e2;
      first = false;
    }
    m1 = std::min(m1, e1);
    m2 = std::min(m2, e2);
    top1 = std::max(top1, e1);
    top2 = std::max(top2, e2);
    ++it;
  }
  if (terms.empty()) return {};
  Bivariate f(static_cast<std::size_t>(top2 - m2 + 1),
              std::vector<Rational>(static_cast<std::size_t>(top1 - m1 + 1), Rational(0)));
  for (const auto& [e, c] : terms) f[e.second - m2][e.first - m1] = c;
  return f;
}

std::vector<Complex> to_complex(const RatPoly& p) {
  std::vector<Complex> out;
  for (const auto& c : p) out.emplace_back(to_real(c));
  return out;
}

/// Roots of a polynomial in one variable, dropping those at 0.
std::vector<Complex> nonzero_roots(std::vector<Complex> c) {
  while (!c.empty() && c.back() == Complex(0)) c.pop_back();
  std::size_t low = 0;
  while (low < c.size() && c[low] == Complex(0)) ++low;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  if (c.size() < 2) return {};
  return polynomial_roots(c);
}

std::vector<Complex> in_y2(const Bivariate& f, const Complex& y1) {
  std::vector<Complex> out;
  for (const auto& row : f) out.push_back(horner(to_complex(row), y1));
  return out;
}

bool lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ma = mp::abs(a[i]).convert_to<double>(), mb = mp::abs(b[i]).convert_to<double>();
    if (std::abs(ma - mb) > 1e-12 * std::max(ma, mb)) return ma < mb;
    const double pa = mp::arg(a[i]).convert_to<double>(), pb = mp::arg(b[i]).convert_to<double>();
    if (std::abs(pa - pb) > 1e-9) return pa < pb;
  }
  return false;
}

}  // namespace

std::optional<Rational> exact_power(const Rational& q, const Rational& e) {
  if (q <= 0) throw std::invalid_argument("q must be positive");
  const Integer s = numerator(e);
  const unsigned long t = denominator(e).convert_to<unsigned long>();
  const auto a = exact_root(numerator(q), t);
  const auto b = exact_root(denominator(q), t);
  if (!a || !b) return std::nullopt;
  const unsigned long k = static_cast<unsigned long>(mp::abs(s).convert_to<unsigned long>());
  Rational base = s < 0 ? Rational(*b) / Rational(*a) : Rational(*a) / Rational(*b);
  Rational out(1);
  for (unsigned long i = 0; i < k; ++i) out *= base;
  return out;
}

Rational rational_power(const Rational& q, const Rational& e) {
  if (auto exact = exact_power(q, e)) return *exact;
  const Wide v = mp::exp(to_float<Wide>(e) * mp::log(to_float<Wide>(q)));
  int ex = 0;
  const Wide mant = mp::frexp(v, &ex);
  const mp::cpp_int digits = mp::ldexp(mant, 330).convert_to<mp::cpp_int>();
  Rational out{Integer(digits.str())};
  const long shift = static_cast<long>(ex) - 330;
  if (shift >= 0) {
    out *= Rational(power_of_two(shift));
  } else {
    out /= Rational(power_of_two(-shift));
  }
  return out;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& input) {
  std::vector<Complex> c = input;
  while (!c.empty() && c.back() == Complex(0)) c.pop_back();
  if (c.size() < 2) return {};
  std::vector<Complex> roots;
  std::size_t low = 0;
  while (c[low] == Complex(0)) {
    roots.emplace_back(0);
    ++low;
  }
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  const std::size_t d = c.size() - 1;
  if (d == 0) return roots;

  // Start on circles whose radii come from the upper hull of (i, log|c_i|).
  std::vector<std::pair<std::size_t, Real>> pts;
  for (std::size_t i = 0; i <= d; ++i) {
    if (c[i] != Complex(0)) pts.emplace_back(i, mp::log(mp::abs(c[i])));
  }
  std::vector<std::pair<std::size_t, Real>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const Real cross = (Real(static_cast<long>(b.first - a.first)) * (p.second - a.second)) -
                         (b.second - a.second) * Real(static_cast<long>(p.first - a.first));
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  std::mt19937 rng(20251);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::vector<Complex> z;
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const std::size_t count = hull[h + 1].first - hull[h].first;
    const Real radius =
        mp::exp((hull[h].second - hull[h + 1].second) / Real(static_cast<long>(count)));
    const Real offset = angle(rng);
    for (std::size_t m = 0; m < count; ++m) {
      const Real theta = two_pi * Real(static_cast<long>(m)) / Real(static_cast<long>(count)) + offset;
      z.emplace_back(radius * mp::cos(theta), radius * mp::sin(theta));
    }
  }

  std::vector<Real> scale;
  for (const auto& ci : c) scale.push_back(mp::abs(ci));
  std::vector<bool> done(d, false);
  static const Real backward("1e-45");
  std::vector<Complex> dc;
  for (std::size_t i = 1; i <= d; ++i) dc.push_back(c[i] * Real(static_cast<long>(i)));
  for (int it = 0; it < kAberthIterationCap; ++it) {
    bool all = true;
    for (std::size_t k = 0; k < d; ++k) {
      if (done[k]) continue;
      const Complex p = horner(c, z[k]);
      Real bound = 0, r = mp::abs(z[k]), power = 1;
      for (std::size_t i = 0; i <= d; ++i) {
        bound += scale[i] * power;
        power *= r;
      }
      if (mp::abs(p) <= backward * bound) {
        done[k] = true;
        continue;
      }
      all = false;
      const Complex ratio = p / horner(dc, z[k]);
      Complex sum(0);
      for (std::size_t j = 0; j < d; ++j) {
        if (j != k) sum += Complex(1) / (z[k] - z[j]);
      }
      const Complex step = ratio / (Complex(1) - ratio * sum);
      z[k] -= step;
      if (mp::abs(step) <= backward * mp::abs(z[k])) done[k] = true;
    }
    if (all) {
      roots.insert(roots.end(), z.begin(), z.end());
      return roots;
    }
  }
  throw Error(ErrorCode::RootFindingFailure,
              "Aberth iteration did not converge within " + std::to_string(kAberthIterationCap) +
                  " iterations (degree " + std::to_string(d) + ")");
}

std::vector<Rational> sylvester_resultant(const Bivariate& f, const Bivariate& g) {
  const Index d1 = y2_degree(f), d2 = y2_degree(g);
  if (d1 < 0 || d2 < 0) return {};
  const std::size_t size = static_cast<std::size_t>(d1 + d2);
  std::vector<std::vector<RatPoly>> m(size, std::vector<RatPoly>(size));
  auto as_poly = [](const std::vector<Rational>& row) {
    RatPoly p = row;
    trim(p);
    return p;
  };
  for (Index i = 0; i < d2; ++i) {
    for (Index t = 0; t <= d1; ++t) m[i][i + t] = as_poly(f[d1 - t]);
  }
  for (Index i = 0; i < d1; ++i) {
    for (Index t = 0; t <= d2; ++t) m[d2 + i][i + t] = as_poly(g[d2 - t]);
  }
  return bareiss_determinant(std::move(m));
}

double log_gradient_residual(const LaurentPotential& w, const Rational& q,
                             const std::vector<Complex>& y) {
  const Terms t(w);
  return residual_at(t, mp::log(to_real(q)), y);
}

NumericCritSet solve_fixed_q(const LaurentPotential& w, const Rational& q) {
  if (w.n > 2) throw Error(ErrorCode::UnsupportedDimension, "numeric solving supports n <= 2");
  if (q <= 0) throw std::invalid_argument("q must be positive");
  NumericCritSet out;
  out.q = q;
  if (w.n == 0) {
    out.roots.push_back({});
    out.residuals.push_back(0.0);
    return out;
  }

  std::vector<Rational> coeff;
  for (const auto& t : w.terms) coeff.push_back(t.coeff * rational_power(q, t.qexp));

  std::vector<std::vector<Complex>> candidates;
  const Bivariate f1 = cleared_log_derivative(w, coeff, 0);
  if (w.n == 1) {
    if (!f1.empty()) {
      for (const auto& r : nonzero_roots(to_complex(f1[0]))) candidates.push_back({r});
    }
  } else {
    const Bivariate f2 = cleared_log_derivative(w, coeff, 1);
    if (f1.empty() || f2.empty()) {
      throw Error(ErrorCode::RootFindingFailure, "a logarithmic derivative vanishes identically");
    }
    RatPoly eliminant = sylvester_resultant(f1, f2);
    trim(eliminant);
    if (eliminant.empty()) {
      throw Error(ErrorCode::RootFindingFailure,
                  "eliminant vanishes identically; q is not generic");
    }
    for (const auto& y1 : nonzero_roots(to_complex(eliminant))) {
      for (const Bivariate* f : {&f1, &f2}) {
        for (const auto& y2 : nonzero_roots(in_y2(*f, y1))) candidates.push_back({y1, y2});
      }
    }
  }

  const Terms terms(w);
  const Real s = mp::log(to_real(q));
  Real min_coeff = -1;
  for (std::size_t j = 0; j < coeff.size(); ++j) {
    const Real c = mp::abs(to_real(coeff[j]));
    if (c > 0 && (min_coeff < 0 || c < min_coeff)) min_coeff = c;
  }
  const Real band = to_real(q) * to_real(q) * min_coeff;

  for (auto& y : candidates) {
    polish(terms, s, y, 80);
    const double res = residual_at(terms, s, y);
    bool in_band = false;
    for (const auto& yi : y) in_band = in_band || !(mp::abs(yi) >= band);
    if (in_band) {
      if (res < kResidualTolerance && std::none_of(y.begin(), y.end(), [](const Complex& v) {
            return v == Complex(0);
          })) {
        throw Error(ErrorCode::SpuriousRootAmbiguity,
                    "a root inside the discard band satisfies the critical equations");
      }
      ++out.discarded;
      continue;
    }
    if (!(res < kResidualTolerance)) continue;
    const bool seen = std::any_of(out.roots.begin(), out.roots.end(),
                                  [&](const auto& r) { return same_root(r, y); });
    if (seen) continue;
    out.roots.push_back(y);
  }
  std::sort(out.roots.begin(), out.roots.end(), lex_less);
  for (const auto& r : out.roots) out.residuals.push_back(residual_at(terms, s, r));
  return out;
}

std::string_view to_string(Positivity p) {
  return p == Positivity::Positive ? "Positive" : "NotPositive";
}

namespace {

/// Continues a critical point from s_from to s_to (s = log q).
std::vector<Complex> track(const Terms& t, std::vector<Complex> y, const Real& s_from,
                           const Real& s_to) {
  if (t.n == 0) return y;
  const Real span = s_to - s_from;
  Real h = span / 64;
  Real s = s_from;
  const Real min_step = mp::abs(h) * Real("1e-10");
  while (s != s_to) {
    if (mp::abs(s_to - s) < mp::abs(h)) h = s_to - s;
    // tangent predictor: H du/ds = -dF/ds
    const auto vals = t.values(s, y);
    std::vector<Complex> ds(static_cast<std::size_t>(t.n), Complex(0));
    for (std::size_t j = 0; j < vals.size(); ++j) {
      for (Index i = 0; i < t.n; ++i) {
        if (t.exponent[j][i]) ds[i] -= Real(t.exponent[j][i]) * t.qexp[j] * vals[j];
      }
    }
    std::vector<Complex> du;
    if (!solve_small(hessian(t, vals), ds, du)) {
      throw Error(ErrorCode::RootFindingFailure, "degenerate critical point during continuation");
    }
    std::vector<Complex> trial = y;
    for (Index i = 0; i < t.n; ++i) trial[i] *= mp::exp(h * du[i]);
    const Real next = s + h;
    if (polish(t, next, trial, 12) && log_distance(trial, y) < Real(0.5)) {
      y = std::move(trial);
      s = next;
    } else {
      h /= 2;
      if (mp::abs(h) < min_step) {
        throw Error(ErrorCode::RootFindingFailure, "continuation step underflow");
      }
    }
  }
  return y;
}

}  // namespace

std::vector<ValuationEstimate> estimate_valuations(const LaurentPotential& w, const Rational& q1,
                                                   const Rational& q2, double margin) {
  if (!(q1 > q2)) throw std::invalid_argument("estimate_valuations requires q1 > q2");
  const NumericCritSet at1 = solve_fixed_q(w, q1);
  const NumericCritSet at2 = solve_fixed_q(w, q2);
  if (at1.roots.size() != at2.roots.size()) {
    throw Error(ErrorCode::MatchingAmbiguity, "root counts differ between the two q samples");
  }
  const Terms terms(w);
  const Real s1 = mp::log(to_real(q1)), s2 = mp::log(to_real(q2));
  const Real radius("1e-6");
  for (std::size_t a = 0; a < at1.roots.size(); ++a) {
    for (std::size_t b = a + 1; b < at1.roots.size(); ++b) {
      if (log_distance(at1.roots[a], at1.roots[b]) < radius) {
        throw Error(ErrorCode::MatchingAmbiguity, "two roots lie within the matching radius");
      }
    }
  }

  std::vector<ValuationEstimate> out;
  std::vector<bool> used(at2.roots.size(), false);
  const Real dlog = s1 - s2;
  for (const auto& root : at1.roots) {
    const auto end = track(terms, root, s1, s2);
    std::size_t best = at2.roots.size();
    Real best_d = -1;
    for (std::size_t b = 0; b < at2.roots.size(); ++b) {
      const Real d = log_distance(end, at2.roots[b]);
      if (best_d < 0 || d < best_d) {
        best_d = d;
        best = b;
      }
    }
    if (best == at2.roots.size() || best_d > radius || used[best]) {
      throw Error(ErrorCode::MatchingAmbiguity, "continued root has no unique partner");
    }
    used[best] = true;

    ValuationEstimate est;
    est.root_q1 = root;
    est.root_q2 = at2.roots[best];
    for (Index i = 0; i < w.n; ++i) {
      const Real z = (mp::log(mp::abs(root[i])) - mp::log(mp::abs(at2.roots[best][i]))) / dlog;
      est.zeta.push_back(z.convert_to<double>());
    }
    bool first = true;
    for (const auto& t : w.terms) {
      double e = t.qexp.convert_to<double>();
      for (Index i = 0; i < w.n; ++i) e += t.exponent(i).convert_to<double>() * est.zeta[i];
      est.min_exponent = first ? e : std::min(est.min_exponent, e);
      first = false;
    }
    est.classification = est.min_exponent > margin ? Positivity::Positive : Positivity::NotPositive;
    out.push_back(std::move(est));
  }
  return out;
}

MatchTable verify_against_tropical(const std::vector<ValuationEstimate>& estimates,
                                   const TmmpReport& report, double tol) {
  MatchTable out;
  for (const auto& f : report.fibers) {
    auto it = std::find_if(out.predictions.begin(), out.predictions.end(),
                           [&](const PredictionMatch& m) { return m.point == f.point; });
    if (it == out.predictions.end()) {
      out.predictions.push_back({f.point, f.multiplicity, 0, false});
    } else {
      it->multiplicity += f.multiplicity;
    }
  }
  for (std::size_t e = 0; e < estimates.size(); ++e) {
    const auto& est = estimates[e];
    if (est.classification != Positivity::Positive) {
      ++out.not_positive;
      continue;
    }
    ++out.positive;
    std::size_t best = out.predictions.size();
    double best_d = tol;
    for (std::size_t p = 0; p < out.predictions.size(); ++p) {
      const auto& pt = out.predictions[p].point;
      if (pt.size() != static_cast<Index>(est.zeta.size())) continue;
      double d = 0;
      for (Index i = 0; i < pt.size(); ++i) {
        d = std::max(d, std::abs(est.zeta[i] - pt(i).convert_to<double>()));
      }
      if (d <= best_d) {
        best_d = d;
        best = p;
      }
    }
    if (best == out.predictions.size()) {
      out.unmatched.push_back(static_cast<Index>(e));
    } else {
      ++out.predictions[best].matched;
    }
  }
  out.ok = out.unmatched.empty();
  for (auto& p : out.predictions) {
    p.ok = Integer(p.matched) == p.multiplicity;
    out.ok = out.ok && p.ok;
  }
  return out;
}

}  // namespace tmmp
