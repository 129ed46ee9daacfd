#include "tmmp/mmp.hpp"

#include <algorithm>
#include <sstream>

#include "tmmp/cohomology.hpp"
#include "tmmp/errors.hpp"

namespace tmmp {

std::string_view to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::Flip: return "Flip";
    case TransitionKind::DivisorialContraction: return "DivisorialContraction";
    case TransitionKind::Fibration: return "Fibration";
    case TransitionKind::FibrationOverPoint: return "FibrationOverPoint";
  }
  return "?";
}

Classification classify_transition(const std::vector<Index>& active, const IntMatrix& nu) {
  const Index n = nu.rows();
  if (static_cast<Index>(active.size()) != n + 1) {
    throw Error(ErrorCode::DegenerateSimplex, "flipping simplex needs exactly n+1 normals");
  }
  std::vector<IntVector> points;
  RatMatrix system(n + 1, n + 1);
  for (Index c = 0; c <= n; ++c) {
    const IntVector col = nu.col(active[c]);
    points.push_back(col);
    for (Index r = 0; r < n; ++r) system(r, c) = Rational(col(r));
    system(n, c) = Rational(1);
  }
  Classification out;
  out.jump = simplex_normalized_volume(points);
  if (out.jump == 0) {
    throw Error(ErrorCode::DegenerateSimplex, "flipping simplex has zero volume");
  }
  RatVector rhs = RatVector::Zero(n + 1);
  rhs(n) = Rational(1);
  const RatVector lambda = *solve_rational(system, rhs);
  for (Index c = 0; c <= n; ++c) {
    (lambda(c) < 0 ? out.plus : out.minus).push_back(c);
  }
  if (out.plus.empty()) {
    out.kind = TransitionKind::FibrationOverPoint;
    out.minus.clear();
  } else if (out.plus.size() == 1 || out.minus.size() == 1) {
    out.kind = TransitionKind::DivisorialContraction;
  } else {
    out.kind = TransitionKind::Flip;
  }
  return out;
}

RatVector suggest_perturbation(const RatVector& support, const Rational& delta) {
  RatVector out = support;
  for (Index j = 0; j < out.size(); ++j) out(j) += Rational(j + 1) * delta;
  return out;
}

namespace {

[[noreturn]] void non_generic(const HPolytope& p, const std::string& what) {
  const Rational delta(1, 1000 * std::max<Index>(p.size(), 1));
  const RatVector hint = suggest_perturbation(p.constants, delta);
  std::ostringstream msg;
  msg << what << "; try support constants perturbed by j*" << to_string(delta) << ": [";
  for (Index j = 0; j < hint.size(); ++j) msg << (j ? ", " : "") << to_string(hint(j));
  msg << "]";
  throw Error(ErrorCode::NonGenericClass, msg.str());
}

Integer torsion_order(const std::vector<Integer>& torsion) {
  Integer out = 1;
  for (const auto& t : torsion) out *= t;
  return out;
}

std::vector<Index> without_time_constraint(const std::vector<Index>& active, Index m) {
  std::vector<Index> out;
  for (Index j : active) {
    if (j < m) out.push_back(j);
  }
  return out;
}

void append_nested(TmmpReport& out, const TmmpReport& base, const Rational& t_max,
                   const Integer& fiber_dim, const FibrationData& fib) {
  for (const auto& e : base.ledger) {
    LedgerEntry copy = e;
    copy.parent_times.insert(copy.parent_times.begin(), t_max);
    copy.multiplicity *= fiber_dim;
    out.ledger.push_back(std::move(copy));
  }
  const RatMatrix qt = to_rational(fib.base_projection).transpose();
  for (const auto& f : base.fibers) {
    RatVector point = fib.base_origin;
    if (f.point.size() > 0) point += qt * f.point;
    out.fibers.push_back({point, f.multiplicity * fiber_dim, std::string(kNonDisplaceableLabel)});
  }
}

FibrationData build_fibration(const HPolytope& p, const std::vector<Index>& fiber,
                              const std::vector<RatVector>& face, const Rational& t_max) {
  const Index n = p.dim();
  FibrationData fib;
  fib.fiber_indices = fiber;
  IntMatrix span(n, static_cast<Index>(fiber.size()));
  for (std::size_t c = 0; c < fiber.size(); ++c) span.col(c) = p.normals.col(fiber[c]);
  const Cokernel coker = cokernel_projection(span);
  fib.fiber_rays = coker.image_coordinates * span;

  std::vector<IntVector> rays;
  for (Index c = 0; c < fib.fiber_rays.cols(); ++c) rays.push_back(fib.fiber_rays.col(c));
  fib.fiber_dim = hull_normalized_volume(rays, true);

  fib.base_projection = hermite_normal_form(coker.projection).H;
  RatVector origin = RatVector::Zero(n);
  for (const auto& v : face) origin += v;
  origin /= Rational(static_cast<long>(face.size()));
  fib.base_origin = origin;

  const Index nb = fib.base_projection.rows();
  std::vector<IntVector> normals;
  std::vector<Rational> constants;
  for (Index j = 0; j < p.size(); ++j) {
    if (std::find(fiber.begin(), fiber.end(), j) != fiber.end()) continue;
    const IntVector image = fib.base_projection * p.normals.col(j);
    if (image.isZero()) continue;
    normals.push_back(image);
    constants.push_back(p.slack(j, origin) - t_max);
    fib.base_labels.push_back(j);
  }
  fib.base.normals.resize(nb, static_cast<Index>(normals.size()));
  fib.base.constants.resize(static_cast<Index>(normals.size()));
  for (std::size_t c = 0; c < normals.size(); ++c) {
    fib.base.normals.col(c) = normals[c];
    fib.base.constants(c) = constants[c];
  }
  return fib;
}

}  // namespace

TmmpReport run_tmmp(const HPolytope& polytope, const std::vector<Integer>& torsion) {
  const Index n = polytope.dim();
  const Index m = polytope.size();
  TmmpReport out;
  out.n = n;

  if (n == 0) {
    Transition tr;
    tr.time = Rational(0);
    for (Index j = 0; j < m; ++j) {
      if (j == 0 || polytope.constants(j) < tr.time) tr.time = polytope.constants(j);
    }
    for (Index j = 0; j < m; ++j) {
      if (polytope.constants(j) == tr.time) tr.active.push_back(j);
    }
    tr.point = RatVector(0);
    tr.kind = TransitionKind::FibrationOverPoint;
    tr.jump = torsion_order(torsion);
    tr.dim_before = tr.jump;
    tr.dim_after = 0;
    out.initial_dim = tr.jump;
    out.ledger.push_back({tr.time, {}, tr.jump});
    out.eigen_valuations.push_back({tr.time, tr.jump});
    out.fibers.push_back({tr.point, tr.jump, std::string(kNonDisplaceableLabel)});
    out.transitions.push_back(std::move(tr));
    return out;
  }

  out.initial_dim = quantum_dim(polytope, torsion);

  const HPolytope lifted = lifted_polytope(polytope);
  const PolytopeCombinatorics lc = solve_polytope(lifted);
  Rational t_max(0);
  for (const auto& v : lc.vertices) t_max = std::max(t_max, v.point(n));
  if (t_max <= 0) non_generic(polytope, "anticanonical flow has no positive time");

  std::vector<const Vertex*> walls;
  std::vector<RatVector> face;
  std::vector<Index> fiber;
  bool first_face = true;
  for (const auto& v : lc.vertices) {
    const Rational& t = v.point(n);
    if (t <= 0) continue;
    if (t == t_max) {
      face.push_back(v.point.head(n));
      const auto act = without_time_constraint(v.active, m);
      if (first_face) {
        fiber = act;
        first_face = false;
      } else {
        std::vector<Index> keep;
        std::set_intersection(fiber.begin(), fiber.end(), act.begin(), act.end(),
                              std::back_inserter(keep));
        fiber = std::move(keep);
      }
      continue;
    }
    if (static_cast<Index>(v.active.size()) != n + 1) {
      non_generic(polytope, "wall at t=" + to_string(t) + " has " +
                                std::to_string(v.active.size()) + " active inequalities");
    }
    walls.push_back(&v);
  }
  std::sort(walls.begin(), walls.end(),
            [n](const Vertex* a, const Vertex* b) { return a->point(n) < b->point(n); });
  for (std::size_t i = 1; i < walls.size(); ++i) {
    if (walls[i]->point(n) == walls[i - 1]->point(n)) {
      non_generic(polytope, "two walls at t=" + to_string(walls[i]->point(n)));
    }
  }

  Integer running = out.initial_dim;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const Vertex& v = *walls[i];
    Transition tr;
    tr.time = v.point(n);
    tr.point = v.point.head(n);
    tr.active = v.active;
    const Classification cls = classify_transition(tr.active, polytope.normals);
    if (cls.kind == TransitionKind::FibrationOverPoint) {
      non_generic(polytope, "wall at t=" + to_string(tr.time) + " contains 0 before the terminal time");
    }
    tr.kind = cls.kind;
    for (Index c : cls.plus) tr.plus.push_back(tr.active[c]);
    for (Index c : cls.minus) tr.minus.push_back(tr.active[c]);
    tr.jump = cls.jump;
    const Rational next = i + 1 < walls.size() ? walls[i + 1]->point(n) : t_max;
    tr.dim_before = running;
    tr.dim_after = quantum_dim(shifted(polytope, (tr.time + next) / 2), torsion);
    running = tr.dim_after;
    out.ledger.push_back({tr.time, {}, tr.jump});
    out.eigen_valuations.push_back({tr.time, tr.jump});
    out.fibers.push_back({tr.point, tr.jump, std::string(kNonDisplaceableLabel)});
    out.transitions.push_back(std::move(tr));
  }

  Transition last;
  last.time = t_max;
  last.active = fiber;
  last.dim_before = running;
  last.dim_after = 0;
  const Index face_dim = affine_dimension(face);
  if (face_dim == 0) {
    last.kind = TransitionKind::FibrationOverPoint;
    last.point = face.front();
    last.jump = running;
    out.ledger.push_back({last.time, {}, last.jump});
    out.fibers.push_back({last.point, last.jump, std::string(kNonDisplaceableLabel)});
  } else {
    FibrationData fib = build_fibration(polytope, fiber, face, t_max);
    if (fib.base.dim() != face_dim) {
      non_generic(polytope, "terminal face dimension differs from the base dimension");
    }
    last.kind = TransitionKind::Fibration;
    last.point = fib.base_origin;
    auto base = std::make_shared<TmmpReport>(run_tmmp(fib.base, {}));
    last.jump = running;
    append_nested(out, *base, t_max, fib.fiber_dim, fib);
    fib.base_report = std::move(base);
    last.fibration = std::move(fib);
  }
  out.eigen_valuations.push_back({last.time, last.jump});
  out.transitions.push_back(std::move(last));
  return out;
}

TmmpReport run_tmmp(const Presentation& p, const ResidualData& res) {
  require_valid(p);
  return run_tmmp(moment_polytope(p, res), res.torsion);
}

LedgerCheck check_ledger(const TmmpReport& report) {
  LedgerCheck out;
  out.expected = report.initial_dim;
  out.total = 0;
  out.dims_ok = true;
  bool nested_ok = true;
  Integer previous = report.initial_dim;
  for (const auto& tr : report.transitions) {
    if (tr.dim_before != previous) out.dims_ok = false;
    if (tr.kind == TransitionKind::Fibration && tr.fibration && tr.fibration->base_report) {
      const LedgerCheck sub = check_ledger(*tr.fibration->base_report);
      nested_ok = nested_ok && sub.ok;
      out.total += tr.fibration->fiber_dim * sub.total;
    } else {
      out.total += tr.jump;
    }
    if (tr.kind == TransitionKind::Flip || tr.kind == TransitionKind::DivisorialContraction) {
      if (tr.dim_before - tr.dim_after != tr.jump || tr.jump <= 0) out.dims_ok = false;
    }
    previous = tr.dim_after;
  }
  Integer fiber_total = 0;
  for (const auto& f : report.fibers) fiber_total += f.multiplicity;
  out.fibers_ok = fiber_total == report.initial_dim;
  out.discrepancy = out.expected - out.total;
  out.ok = out.discrepancy == 0 && nested_ok && out.fibers_ok && out.dims_ok;
  return out;
}

}  // namespace tmmp
