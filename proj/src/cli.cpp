#include "tmmp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "tmmp/cohomology.hpp"
#include "tmmp/errors.hpp"
#include "tmmp/potential.hpp"
#include "tmmp/relations.hpp"

namespace tmmp {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void schema_error(std::string_view source, const std::string& field,
                               const std::string& message) {
  throw Error(ErrorCode::SchemaError,
              std::string(source) + ": field '" + field + "': " + message);
}

Rational rational_field(const Json& j, std::string_view source, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) {
    throw Error(ErrorCode::NonRationalValue, std::string(source) + ": field '" + field +
                                                 "': floating-point value " + j.dump() +
                                                 "; write exact rationals as \"p/q\" strings");
  }
  if (!j.is_string()) schema_error(source, field, "expected a \"p/q\" string");
  const auto text = j.get<std::string>();
  auto value = parse_rational(text);
  if (!value) {
    throw Error(ErrorCode::NonRationalValue, std::string(source) + ": field '" + field +
                                                 "': \"" + text +
                                                 "\" is not an exact rational (use \"p/q\")");
  }
  return *value;
}

RatVector rational_array(const Json& j, std::string_view source, const std::string& field,
                         std::optional<Index> expected) {
  if (!j.is_array()) schema_error(source, field, "expected an array");
  if (expected && static_cast<Index>(j.size()) != *expected) {
    schema_error(source, field,
                 "expected " + std::to_string(*expected) + " entries, got " + std::to_string(j.size()));
  }
  RatVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = rational_field(j[i], source, field + "[" + std::to_string(i) + "]");
  }
  return v;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SchemaError, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max()) {
    return Json(x.convert_to<long long>());
  }
  return Json(to_string(x));
}

Json int_vector_json(const IntVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(integer_json(v(i)));
  return out;
}

Json int_matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(int_vector_json(m.row(r).transpose()));
  return out;
}

template <class Seq>
Json index_json(const Seq& s) {
  Json out = Json::array();
  for (auto i : s) out.push_back(static_cast<long long>(i));
  return out;
}

Json integers_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

Json polytope_json(const HPolytope& p) {
  return Json{{"normals", int_matrix_json(p.normals)}, {"constants", vector_json(p.constants)}};
}

std::string point_text(const RatVector& v) {
  std::string out = "(";
  for (Index i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v(i));
  return out + ")";
}

std::string indices_text(const std::vector<Index>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void append_report_text(std::ostringstream& out, const TmmpReport& rep, const std::string& pad) {
  out << pad << "initial quantum dimension " << rep.initial_dim << "\n";
  for (const auto& tr : rep.transitions) {
    out << pad << "t = " << to_string(tr.time) << "  " << to_string(tr.kind) << "  jump "
        << tr.jump;
    if (tr.point.size() > 0) out << "  at " << point_text(tr.point);
    if (!tr.plus.empty()) out << "  partition " << indices_text(tr.plus) << " | " << indices_text(tr.minus);
    out << "\n";
    if (tr.fibration) {
      out << pad << "  fiber " << indices_text(tr.fibration->fiber_indices) << " of dimension "
          << tr.fibration->fiber_dim << ", base of dimension " << tr.fibration->base.dim() << ":\n";
      append_report_text(out, *tr.fibration->base_report, pad + "    ");
    }
  }
}

Json transition_json(const Transition& tr) {
  Json j;
  j["time"] = rational_json(tr.time);
  j["point"] = vector_json(tr.point);
  j["active"] = index_json(tr.active);
  j["kind"] = std::string(to_string(tr.kind));
  if (tr.kind == TransitionKind::Flip || tr.kind == TransitionKind::DivisorialContraction) {
    j["partition"] = Json{{"plus", index_json(tr.plus)}, {"minus", index_json(tr.minus)}};
  }
  j["jump"] = integer_json(tr.jump);
  j["dims"] = Json{{"before", integer_json(tr.dim_before)}, {"after", integer_json(tr.dim_after)}};
  if (tr.fibration) {
    const auto& f = *tr.fibration;
    Json fj;
    fj["fiber_indices"] = index_json(f.fiber_indices);
    fj["fiber_rays"] = int_matrix_json(f.fiber_rays);
    fj["fiber_dim"] = integer_json(f.fiber_dim);
    fj["base_projection"] = int_matrix_json(f.base_projection);
    fj["base_origin"] = vector_json(f.base_origin);
    fj["base"] = polytope_json(f.base);
    fj["base_labels"] = index_json(f.base_labels);
    fj["base_report"] = report_json(*f.base_report);
    j["fibration"] = std::move(fj);
  }
  return j;
}

Json fibers_json(const TmmpReport& rep) {
  Json out = Json::array();
  for (const auto& f : rep.fibers) {
    out.push_back(Json{{"point", vector_json(f.point)},
                       {"multiplicity", integer_json(f.multiplicity)},
                       {"label", f.label}});
  }
  return out;
}

Json eigen_json(const TmmpReport& rep) {
  Json out = Json::array();
  for (const auto& e : rep.eigen_valuations) {
    out.push_back(Json{{"time", rational_json(e.time)}, {"multiplicity", integer_json(e.multiplicity)}});
  }
  return out;
}

}  // namespace

InputDocument parse_document(std::string_view text, std::string_view source) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string(source) + ":" +
                                            std::to_string(line_of(text, e.byte)) +
                                            ": malformed JSON: " + e.what());
  }
  if (!doc.is_object()) schema_error(source, "<root>", "expected an object");
  for (const auto& [key, _] : doc.items()) {
    static const std::vector<std::string> known{"name", "dim_g", "weights", "support", "labels", "deform"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      schema_error(source, key, "unknown field");
    }
  }
  for (const char* required : {"name", "dim_g", "weights", "support"}) {
    if (!doc.contains(required)) schema_error(source, required, "missing");
  }

  InputDocument out;
  Presentation& p = out.presentation;
  if (!doc["name"].is_string()) schema_error(source, "name", "expected a string");
  p.name = doc["name"].get<std::string>();

  const Json& w = doc["weights"];
  if (!w.is_array() || w.empty()) schema_error(source, "weights", "expected a non-empty array of rows");
  const Index r = static_cast<Index>(w.size());
  if (!w[0].is_array() || w[0].empty()) schema_error(source, "weights[0]", "expected a non-empty array");
  const Index k = static_cast<Index>(w[0].size());
  p.weights = IntMatrix(r, k);
  for (Index a = 0; a < r; ++a) {
    const std::string row_field = "weights[" + std::to_string(a) + "]";
    if (!w[a].is_array() || static_cast<Index>(w[a].size()) != k) {
      schema_error(source, row_field, "expected " + std::to_string(k) + " entries");
    }
    for (Index j = 0; j < k; ++j) {
      const Json& e = w[a][j];
      const std::string field = row_field + "[" + std::to_string(j) + "]";
      if (e.is_number_float()) {
        throw Error(ErrorCode::NonRationalValue,
                    std::string(source) + ": field '" + field + "': weights must be exact integers");
      }
      if (!e.is_number_integer()) schema_error(source, field, "expected an integer");
      p.weights(a, j) = Integer(e.get<long long>());
    }
  }

  if (!doc["dim_g"].is_number_integer()) schema_error(source, "dim_g", "expected an integer");
  if (doc["dim_g"].get<long long>() != r) {
    schema_error(source, "dim_g",
                 "dim_g is " + doc["dim_g"].dump() + " but weights has " + std::to_string(r) + " rows");
  }
  p.support = rational_array(doc["support"], source, "support", k);

  if (doc.contains("labels")) {
    const Json& l = doc["labels"];
    if (!l.is_array() || static_cast<Index>(l.size()) != k) {
      schema_error(source, "labels", "expected " + std::to_string(k) + " strings");
    }
    for (std::size_t j = 0; j < l.size(); ++j) {
      if (!l[j].is_string()) schema_error(source, "labels[" + std::to_string(j) + "]", "expected a string");
      p.labels.push_back(l[j].get<std::string>());
    }
  }
  if (doc.contains("deform")) out.deform = rational_array(doc["deform"], source, "deform", k);
  return out;
}

InputDocument parse_input_document(const fs::path& path) {
  return parse_document(read_file(path), path.string());
}

Presentation parse_input(const fs::path& path) { return parse_input_document(path).presentation; }

RatVector parse_deform(const fs::path& path) {
  const std::string text = read_file(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, path.string() + ":" + std::to_string(line_of(text, e.byte)) +
                                            ": malformed JSON: " + e.what());
  }
  if (doc.is_object()) {
    if (!doc.contains("deform")) schema_error(path.string(), "deform", "missing");
    return rational_array(doc["deform"], path.string(), "deform", std::nullopt);
  }
  return rational_array(doc, path.string(), "<root>", std::nullopt);
}

Json rational_json(const Rational& x) { return Json(to_string(x)); }

Json vector_json(const RatVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(rational_json(v(i)));
  return out;
}

Json real_json(double x) {
  if (!std::isfinite(x)) return Json(nullptr);
  return Json(std::stod(fmt12(x)));
}

Json to_json(const Presentation& p, const std::optional<RatVector>& deform) {
  Json j;
  j["name"] = p.name;
  j["dim_g"] = static_cast<long long>(p.r());
  j["weights"] = int_matrix_json(p.weights);
  j["support"] = vector_json(p.support);
  if (!p.labels.empty()) j["labels"] = p.labels;
  if (deform) j["deform"] = vector_json(*deform);
  return j;
}

std::string serialize(const Presentation& p) { return to_json(p).dump(2) + "\n"; }

Json report_json(const TmmpReport& report) {
  Json j;
  j["n"] = static_cast<long long>(report.n);
  j["initial_dim"] = integer_json(report.initial_dim);
  Json transitions = Json::array();
  for (const auto& tr : report.transitions) transitions.push_back(transition_json(tr));
  j["transitions"] = std::move(transitions);
  Json ledger = Json::array();
  for (const auto& e : report.ledger) {
    Json parents = Json::array();
    for (const auto& t : e.parent_times) parents.push_back(rational_json(t));
    ledger.push_back(Json{{"time", rational_json(e.time)},
                          {"parent_times", std::move(parents)},
                          {"multiplicity", integer_json(e.multiplicity)}});
  }
  j["ledger"] = std::move(ledger);
  j["eigen_valuations"] = eigen_json(report);
  j["fibers"] = fibers_json(report);
  return j;
}

Json ledger_json(const LedgerCheck& c) {
  return Json{{"ok", c.ok},
              {"expected", integer_json(c.expected)},
              {"total", integer_json(c.total)},
              {"discrepancy", integer_json(c.discrepancy)},
              {"fibers_ok", c.fibers_ok},
              {"dims_ok", c.dims_ok}};
}

std::string render_frame(const HPolytope& polytope, const std::vector<std::string>& labels,
                         const TmmpReport& report, const Rational& time) {
  constexpr double width = 800, height = 600, margin = 60;
  auto xy = [](const RatVector& v) { return std::pair{v(0).convert_to<double>(), v(1).convert_to<double>()}; };

  const auto initial = solve_polytope(polytope);
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  auto extend = [&](const RatVector& v) {
    auto [x, y] = xy(v);
    if (first) {
      xmin = xmax = x;
      ymin = ymax = y;
      first = false;
    }
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (const auto& v : initial.vertices) extend(v.point);
  for (const auto& tr : report.transitions) extend(tr.point);
  const double spanx = std::max(xmax - xmin, 1e-9), spany = std::max(ymax - ymin, 1e-9);
  const double scale = std::min((width - 2 * margin) / spanx, (height - 2 * margin) / spany);
  const double offx = (width - scale * spanx) / 2, offy = (height - scale * spany) / 2;
  auto sx = [&](double x) { return offx + (x - xmin) * scale; };
  auto sy = [&](double y) { return height - (offy + (y - ymin) * scale); };

  std::ostringstream svg;
  svg << std::setprecision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  svg << "  <rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  svg << "  <text x=\"20\" y=\"30\" font-family=\"sans-serif\" font-size=\"18\">t = " << to_string(time)
      << "</text>\n";

  const HPolytope slice = shifted(polytope, time);
  const auto comb = solve_polytope(slice);
  if (!comb.empty && !comb.vertices.empty()) {
    double cx = 0, cy = 0;
    for (const auto& v : comb.vertices) {
      auto [x, y] = xy(v.point);
      cx += x;
      cy += y;
    }
    cx /= static_cast<double>(comb.vertices.size());
    cy /= static_cast<double>(comb.vertices.size());
    std::vector<std::pair<double, std::pair<double, double>>> ring;
    for (const auto& v : comb.vertices) {
      auto [x, y] = xy(v.point);
      ring.push_back({std::atan2(y - cy, x - cx), {x, y}});
    }
    std::sort(ring.begin(), ring.end());
    svg << "  <polygon fill=\"#cfe3f7\" stroke=\"#1f4e79\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < ring.size(); ++i) {
      svg << (i ? " " : "") << sx(ring[i].second.first) << "," << sy(ring[i].second.second);
    }
    svg << "\"/>\n";
    if (comb.full_dimensional) {
      for (Index j : comb.facet_indices) {
        std::vector<std::pair<double, double>> ends;
        for (const auto& v : comb.vertices) {
          if (std::find(v.active.begin(), v.active.end(), j) != v.active.end()) ends.push_back(xy(v.point));
        }
        if (ends.size() != 2) continue;
        const double mx = (ends[0].first + ends[1].first) / 2, my = (ends[0].second + ends[1].second) / 2;
        const double px = sx(mx) + 0.06 * (sx(mx) - sx(cx)), py = sy(my) + 0.06 * (sy(my) - sy(cy));
        const std::string name = j < static_cast<Index>(labels.size()) ? labels[j] : "x" + std::to_string(j + 1);
        svg << "  <text x=\"" << px << "\" y=\"" << py
            << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" << name << "</text>\n";
      }
    }
  }
  for (const auto& tr : report.transitions) {
    auto [x, y] = xy(tr.point);
    svg << "  <circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"5\" fill=\""
        << (tr.time <= time ? "#c0392b" : "#999999") << "\"/>\n";
    svg << "  <text x=\"" << sx(x) + 8 << "\" y=\"" << sy(y) - 8
        << "\" font-family=\"sans-serif\" font-size=\"12\">t=" << to_string(tr.time) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<SvgFrame> emit_svg(const HPolytope& polytope, const std::vector<std::string>& labels,
                               const TmmpReport& report, const fs::path& out_dir) {
  if (polytope.dim() != 2) {
    throw Error(ErrorCode::UnsupportedDimension, "SVG frames are only drawn for n = 2");
  }
  std::vector<Rational> marks{Rational(0)};
  for (const auto& tr : report.transitions) marks.push_back(tr.time);
  Rational gap = -1;
  for (std::size_t i = 1; i < marks.size(); ++i) {
    const Rational d = marks[i] - marks[i - 1];
    if (d > 0 && (gap < 0 || d < gap)) gap = d;
  }
  const Rational eps = gap > 0 ? gap / 4 : Rational(0);
  std::vector<Rational> times{Rational(0)};
  for (std::size_t i = 0; i + 1 < report.transitions.size(); ++i) {
    times.push_back(report.transitions[i].time - eps);
    times.push_back(report.transitions[i].time + eps);
  }
  times.push_back(report.transitions.back().time);

  fs::create_directories(out_dir);
  std::vector<SvgFrame> frames;
  for (std::size_t i = 0; i < times.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%02zu.svg", i);
    const fs::path file = out_dir / name;
    std::ofstream(file) << render_frame(polytope, labels, report, times[i]);
    frames.push_back({times[i], file});
  }
  return frames;
}

namespace {

struct Context {
  Presentation p;
  ResidualData res;
};

void analyze(const Context& c, Json& j, std::ostringstream& text) {
  require_valid(c.p);
  const HPolytope poly = moment_polytope(c.p, c.res);
  const auto comb = solve_polytope(poly);
  const FanData fan = build_fan(poly, c.res.torsion);
  const auto w = build_potential(c.res, c.p.support);
  const Integer kou = kouchnirenko_count(w);
  const Integer qd = quantum_dim(fan);
  const auto boxes = box_elements(fan);

  j["residual"] = Json{{"n", static_cast<long long>(c.res.n)},
                       {"nu", int_matrix_json(c.res.nu)},
                       {"torsion", integers_json(c.res.torsion)}};
  Json vertices = Json::array();
  for (const auto& v : comb.vertices) {
    vertices.push_back(Json{{"point", vector_json(v.point)}, {"active", index_json(v.active)}});
  }
  j["polytope"] = Json{{"constants", vector_json(poly.constants)},
                       {"vertices", std::move(vertices)},
                       {"facets", index_json(comb.facet_indices)},
                       {"spurious", index_json(comb.spurious_indices)},
                       {"bounded", comb.bounded},
                       {"full_dimensional", comb.full_dimensional}};
  j["quantum_dim"] = integer_json(qd);
  j["kouchnirenko"] = integer_json(kou);
  j["semi_fano"] = kou == qd;
  Json box_counts = Json::array();
  for (const auto& b : boxes) box_counts.push_back(static_cast<long long>(b.size()));
  j["box_counts"] = std::move(box_counts);
  j["potential"] = to_string(w);

  text << c.p.name << ": n = " << c.res.n << ", " << comb.vertices.size() << " vertices, facets "
       << indices_text(comb.facet_indices) << ", spurious " << indices_text(comb.spurious_indices) << "\n";
  text << "dim QH = " << qd << "\nKouchnirenko = " << kou << "\nsemi-Fano = "
       << (kou == qd ? "true" : "false") << "\npotential W = " << to_string(w) << "\n";
}

void relations(const Context& c, Json& j, std::ostringstream& text) {
  require_valid(c.p);
  const FanData fan = build_fan(moment_polytope(c.p, c.res), c.res.torsion);
  const auto collections = primitive_collections(fan, c.p.k());
  Json pc = Json::array();
  for (const auto& s : collections) pc.push_back(index_json(s));
  j["primitive_collections"] = std::move(pc);
  Json rels = Json::array();
  text << "primitive collections:";
  for (const auto& s : collections) text << " " << indices_text(s);
  text << "\n";
  for (const auto& d : suggested_degrees(fan, c.p)) {
    const QsrRelation rel = qsr_relation(c.p, d);
    const auto sub = substitute_quantum_embedding(rel, c.res, c.p.support);
    auto mono = [](const QuantumMonomial& m) {
      return Json{{"qexp", rational_json(m.qexp)}, {"exponent", int_vector_json(m.exponent)}};
    };
    rels.push_back(Json{{"degree", vector_json(rel.degree)},
                        {"pairings", integers_json(rel.pairings)},
                        {"qexp", rational_json(rel.qexp)},
                        {"left", integers_json(rel.left)},
                        {"right", integers_json(rel.right)},
                        {"text", to_text(rel, c.p)},
                        {"substitution", Json{{"left", mono(sub.left)},
                                              {"right", mono(sub.right)},
                                              {"identical", sub.identical}}}});
    text << "degree " << point_text(rel.degree) << ": " << to_text(rel, c.p)
         << (sub.identical ? "" : "  [substitution mismatch]") << "\n";
  }
  j["relations"] = std::move(rels);
}

TmmpReport tmmp_run(const Context& c, const CommandOptions& o, CommandResult& result, Json& j) {
  const TmmpReport rep = run_tmmp(c.p, c.res);
  if (o.svg_dir) {
    const auto frames = emit_svg(moment_polytope(c.p, c.res), c.p.labels, rep, *o.svg_dir);
    Json fj = Json::array();
    for (const auto& f : frames) {
      fj.push_back(Json{{"time", rational_json(f.time)}, {"file", f.file.string()}});
      result.artifacts.push_back(f.file);
    }
    j["svg_frames"] = std::move(fj);
  }
  return rep;
}

void crit(const Context& c, const TmmpReport& rep, Json& j, std::ostringstream& text) {
  const auto sf = semifano_report(c.p);
  const auto check = check_ledger(rep);
  j["kouchnirenko"] = integer_json(sf.kouchnirenko);
  j["quantum_dim"] = integer_json(sf.quantum_dim);
  j["semi_fano"] = sf.semi_fano;
  j["eigen_valuations"] = eigen_json(rep);
  j["fibers"] = fibers_json(rep);
  j["ledger"] = ledger_json(check);
  text << "Kouchnirenko = " << sf.kouchnirenko << ", dim QH = " << sf.quantum_dim << "\n";
  text << "eigenvalue valuations:";
  for (const auto& e : rep.eigen_valuations) text << " " << to_string(e.time) << " (x" << e.multiplicity << ")";
  text << "\n";
  for (const auto& f : rep.fibers) {
    text << "fiber over " << point_text(f.point) << " x" << f.multiplicity << "  " << f.label << "\n";
  }
  text << "ledger " << check.total << " = " << check.expected << " : " << (check.ok ? "ok" : "MISMATCH") << "\n";
}

void verify(const Context& c, const CommandOptions& o, Json& j, std::ostringstream& text) {
  require_valid(c.p);
  if (c.res.n > 2) throw Error(ErrorCode::UnsupportedDimension, "numeric verification needs n <= 2");
  const auto w = build_potential(c.res, c.p.support);
  const TmmpReport rep = run_tmmp(c.p, c.res);
  Json solutions = Json::array();
  for (const Rational& q : {o.q1, o.q2}) {
    const auto s = solve_fixed_q(w, q);
    double worst = 0;
    for (double r : s.residuals) worst = std::max(worst, r);
    solutions.push_back(Json{{"q", rational_json(q)},
                             {"roots", static_cast<long long>(s.roots.size())},
                             {"max_residual", real_json(worst)},
                             {"discarded", static_cast<long long>(s.discarded)}});
    text << "q = " << to_string(q) << ": " << s.roots.size() << " roots, max residual " << fmt12(worst) << "\n";
  }
  const auto est = estimate_valuations(w, o.q1, o.q2, o.tol);
  Json ej = Json::array();
  for (const auto& e : est) {
    Json zeta = Json::array();
    for (double z : e.zeta) zeta.push_back(real_json(z));
    ej.push_back(Json{{"zeta", std::move(zeta)},
                      {"min_exponent", real_json(e.min_exponent)},
                      {"classification", std::string(to_string(e.classification))}});
    text << "  zeta = (";
    for (std::size_t i = 0; i < e.zeta.size(); ++i) text << (i ? ", " : "") << fmt12(e.zeta[i]);
    text << ")  " << to_string(e.classification) << "\n";
  }
  const auto table = verify_against_tropical(est, rep, o.tol);
  Json preds = Json::array();
  for (const auto& p : table.predictions) {
    preds.push_back(Json{{"point", vector_json(p.point)},
                         {"multiplicity", integer_json(p.multiplicity)},
                         {"matched", static_cast<long long>(p.matched)},
                         {"ok", p.ok}});
    text << "prediction " << point_text(p.point) << " x" << p.multiplicity << ": matched " << p.matched
         << (p.ok ? "" : "  MISMATCH") << "\n";
  }
  Json numeric;
  numeric["q1"] = rational_json(o.q1);
  numeric["q2"] = rational_json(o.q2);
  numeric["tol"] = real_json(o.tol);
  numeric["solutions"] = std::move(solutions);
  numeric["estimates"] = std::move(ej);
  numeric["match"] = Json{{"predictions", std::move(preds)},
                          {"unmatched", index_json(table.unmatched)},
                          {"positive", static_cast<long long>(table.positive)},
                          {"not_positive", static_cast<long long>(table.not_positive)},
                          {"ok", table.ok}};
  j["numeric"] = std::move(numeric);
  const std::size_t matched = static_cast<std::size_t>(table.positive) - table.unmatched.size();
  std::size_t mismatches = table.unmatched.size();
  for (const auto& p : table.predictions) mismatches += p.ok ? 0 : 1;
  text << matched << " matched roots, " << mismatches << " mismatches\n";
}

void write_json(const fs::path& path, const Json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream(path) << j.dump(2) << "\n";
}

}  // namespace

CommandResult run_command(const CommandOptions& o) {
  CommandResult result;
  Json& j = result.json;
  j["command"] = o.command;
  std::ostringstream text;

  const bool known = std::find(std::begin(kCommands), std::end(kCommands), o.command) != std::end(kCommands);
  if (!known || !fs::exists(o.input)) {
    result.exit_code = 2;
    const std::string message =
        !known ? "unknown command '" + o.command + "'" : "input file not found: " + o.input.string();
    j["error"] = Json{{"code", "UsageError"}, {"message", message}};
    result.text = message + "\n";
    if (o.json_out) write_json(*o.json_out, j);
    return result;
  }

  try {
    InputDocument doc = parse_input_document(o.input);
    std::optional<RatVector> deform = o.deform ? std::optional(parse_deform(*o.deform)) : doc.deform;
    Context c{doc.presentation, {}};
    if (deform) {
      if (deform->size() != c.p.k()) {
        throw Error(ErrorCode::SchemaError, "deform vector needs " + std::to_string(c.p.k()) + " entries");
      }
      c.p = deform_support(c.p, *deform);
      j["deform"] = vector_json(*deform);
    }
    j["input"] = c.p.name;

    if (o.command == "validate") {
      const auto v = validate(c.p);
      j["checks"] = Json{{"spans", v.spans},
                         {"half_space", v.half_space},
                         {"nonempty", v.nonempty},
                         {"bounded", v.bounded},
                         {"full_dimensional", v.full_dimensional},
                         {"locally_free", v.locally_free}};
      j["ok"] = v.ok();
      text << c.p.name << ": " << (v.ok() ? "valid" : "invalid") << "\n";
      text << "  spans " << v.spans << ", half-space " << v.half_space << ", nonempty " << v.nonempty
           << ", bounded " << v.bounded << ", full-dimensional " << v.full_dimensional
           << ", locally free " << v.locally_free << "\n";
      if (auto e = v.error()) {
        result.exit_code = 1;
        j["error"] = Json{{"code", std::string(to_string(*e))}, {"message", "presentation is invalid"}};
      }
    } else {
      c.res = residual(c.p);
      if (o.command == "analyze") {
        analyze(c, j, text);
      } else if (o.command == "relations") {
        relations(c, j, text);
      } else if (o.command == "tmmp") {
        const auto rep = tmmp_run(c, o, result, j);
        const auto check = check_ledger(rep);
        j["report"] = report_json(rep);
        j["ledger_check"] = ledger_json(check);
        append_report_text(text, rep, "");
        text << "ledger " << check.total << " = " << check.expected << " : " << (check.ok ? "ok" : "MISMATCH")
             << "\n";
      } else if (o.command == "crit") {
        const auto rep = tmmp_run(c, o, result, j);
        crit(c, rep, j, text);
      } else {
        verify(c, o, j, text);
      }
    }
  } catch (const Error& e) {
    result.exit_code = 1;
    j["error"] = Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    text << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    result.exit_code = 1;
    j["error"] = Json{{"code", "InvalidArgument"}, {"message", e.what()}};
    text << "error: " << e.what() << "\n";
  }
  result.text = text.str();
  if (o.json_out) {
    write_json(*o.json_out, j);
    result.artifacts.push_back(*o.json_out);
  }
  return result;
}

}  // namespace tmmp
