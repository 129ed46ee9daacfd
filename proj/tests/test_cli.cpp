#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "tmmp/cli.hpp"
#include "tmmp/errors.hpp"

using namespace tmmp;
namespace fs = std::filesystem;

namespace {

const fs::path kData = TMMP_DATA_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "tmmp_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_text(const std::string& name, const std::string& text) {
  const fs::path path = scratch(name);
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode parse_failure(const std::string& text) {
  try {
    parse_document(text, "doc.json");
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("document parsed unexpectedly");
  return ErrorCode::SchemaError;
}

CommandResult run(const std::string& command, const fs::path& input, CommandOptions o = {}) {
  o.command = command;
  o.input = input;
  return run_command(o);
}

}  // namespace

TEST_CASE("input documents") {
  auto doc = parse_document(R"({"name": "P2", "dim_g": 1, "weights": [[1, 1, 1]],
                                "support": ["1/3", "1/3", "1/3"]})");
  CHECK(doc.presentation == fixtures::projective_space(3));
  CHECK(validate(doc.presentation).ok());

  CHECK(parse_failure(R"({"name": "x", "dim_g": 1, "weights": [[1, 1]], "support": ["1.5", "1"]})") ==
        ErrorCode::NonRationalValue);
  CHECK(parse_failure(R"({"name": "x", "dim_g": 1, "weights": [[1, 1]], "support": [1.5, 1]})") ==
        ErrorCode::NonRationalValue);
  CHECK(parse_failure(R"({"name": "x", "dim_g": 1, "weights": [[1, 0.5]], "support": [1, 1]})") ==
        ErrorCode::NonRationalValue);
  CHECK(parse_failure(R"({"name": "x", "dim_g": 2, "weights": [[1, 1]], "support": [1, 1]})") ==
        ErrorCode::SchemaError);
  CHECK(parse_failure(R"({"name": "x", "dim_g": 1, "weights": [[1, 1]], "support": ["1"]})") ==
        ErrorCode::SchemaError);
  CHECK(parse_failure(R"({"name": "x", "dim_g": 1, "weights": [[1, 1], [1]], "support": [1, 1]})") ==
        ErrorCode::SchemaError);
  CHECK(parse_failure(R"({"dim_g": 1, "weights": [[1, 1]], "support": [1, 1]})") == ErrorCode::SchemaError);
  CHECK(parse_failure(R"({"name": "x", "colour": 1, "dim_g": 1, "weights": [[1]], "support": [1]})") ==
        ErrorCode::SchemaError);

  try {
    parse_document("{\n  \"name\": \"x\",\n  \"dim_g\": 1,\n  oops\n}", "bad.json");
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
    CHECK(std::string(e.what()).find("bad.json:4") != std::string::npos);
  }
  try {
    parse_document(R"({"name": "x", "dim_g": 1, "weights": [[1, "a"]], "support": [1, 1]})", "w.json");
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("weights[0][1]") != std::string::npos);
  }

  auto with_extras = parse_document(R"({"name": "L", "dim_g": 1, "weights": [[1, 1]], "support": [0, "1"],
                                        "labels": ["a", "b"], "deform": ["1/2", "1/2"]})");
  CHECK(with_extras.presentation.labels == std::vector<std::string>{"a", "b"});
  REQUIRE(with_extras.deform);
  CHECK((*with_extras.deform)(0) == Rational(1, 2));
}

TEST_CASE("data documents match the fixtures and round-trip") {
  const std::vector<std::string> files{"p1",           "p2",           "p3",      "p4",
                                       "teardrop",     "stacky_point", "p1_extra_term",
                                       "p1xp1",        "p2_two_torus", "blowup",  "hirzebruch_f2",
                                       "hirzebruch_f3", "hirzebruch_f4"};
  const auto all = fixtures::all_fixtures();
  REQUIRE(files.size() == all.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    CAPTURE(files[i]);
    const Presentation p = parse_input(kData / (files[i] + ".json"));
    CHECK(p == all[i]);
    const std::string text = serialize(p);
    const Presentation again = parse_document(text).presentation;
    CHECK(again == p);
    CHECK(serialize(again) == text);
  }
  // blow-up document gives [0,4] x [0,2] cut by mu1 + mu2 >= 1/2
  const Presentation blow = parse_input(kData / "blowup.json");
  const auto res = residual(blow);
  const auto comb = solve_polytope(moment_polytope(blow, res));
  CHECK(comb.vertices.size() == 5);

  Presentation labelled = fixtures::teardrop();
  labelled.labels = {"u", "v"};
  CHECK(parse_document(serialize(labelled)).presentation == labelled);
}

TEST_CASE("commands") {
  auto analyze = run("analyze", kData / "teardrop.json");
  CHECK(analyze.exit_code == 0);
  CHECK(analyze.json["quantum_dim"] == 3);
  CHECK(analyze.json["kouchnirenko"] == 3);
  CHECK(analyze.json["semi_fano"] == true);

  auto tmmp = run("tmmp", kData / "blowup.json");
  CHECK(tmmp.exit_code == 0);
  CHECK(tmmp.json["report"]["transitions"].size() == 2);
  CHECK(tmmp.json["report"]["transitions"][0]["time"] == "1/2");
  CHECK(tmmp.json["ledger_check"]["total"] == 5);
  CHECK(tmmp.json["ledger_check"]["expected"] == 5);
  CHECK(tmmp.json["ledger_check"]["ok"] == true);

  auto verify = run("verify", kData / "p1xp1.json");
  CHECK(verify.exit_code == 0);
  const auto& match = verify.json["numeric"]["match"];
  CHECK(match["positive"] == 4);
  CHECK(match["unmatched"].empty());
  CHECK(match["ok"] == true);
  CHECK(verify.text.find("4 matched roots, 0 mismatches") != std::string::npos);

  auto rel = run("relations", kData / "p3.json");
  CHECK(rel.exit_code == 0);
  CHECK(rel.json["relations"][0]["text"] == "x1*x2*x3*x4 - q^(1/1)");

  auto crit = run("crit", kData / "blowup.json");
  CHECK(crit.json["ledger"]["ok"] == true);
  CHECK(crit.json["fibers"].size() == 2);

  auto valid = run("validate", kData / "p2.json");
  CHECK(valid.exit_code == 0);
  CHECK(valid.json["ok"] == true);
}

TEST_CASE("exit codes and error documents") {
  CHECK(run("analyze", scratch("missing.json")).exit_code == 2);
  CHECK(run("frobnicate", kData / "p1.json").exit_code == 2);

  const auto bad = write_text("decimal.json",
                              R"({"name": "x", "dim_g": 1, "weights": [[1, 1]], "support": ["0.5", "1"]})");
  CommandOptions o;
  o.json_out = scratch("decimal_error.json");
  auto r = run("analyze", bad, o);
  CHECK(r.exit_code == 1);
  const auto written = Json::parse(slurp(*o.json_out));
  CHECK(written["error"]["code"] == "NonRationalValue");

  const auto half = write_text("halfspace.json",
                               R"({"name": "x", "dim_g": 1, "weights": [[1, -1]], "support": [0, 0]})");
  auto v = run("validate", half);
  CHECK(v.exit_code == 1);
  CHECK(v.json["error"]["code"] == "HalfSpaceViolation");

  auto tie = run("tmmp", write_text("nongeneric.json", serialize(fixtures::make(
                                                           "twice cut",
                                                           {{1, 1, 0, 0, 0, 0},
                                                            {0, 0, 1, 1, 0, 0},
                                                            {-1, 0, -1, 0, 1, 0},
                                                            {0, -1, 0, -1, 0, 1}},
                                                           {0, 4, 0, 4, Rational(-1, 2), Rational(15, 2)}))));
  CHECK(tie.exit_code == 1);
  CHECK(tie.json["error"]["code"] == "NonGenericClass");

  auto p3verify = run("verify", kData / "p3.json");
  CHECK(p3verify.exit_code == 1);
  CHECK(p3verify.json["error"]["code"] == "UnsupportedDimension");
}

TEST_CASE("deformed support constants") {
  const auto alpha = write_text("alpha.json", R"({"deform": ["0", "2", "0", "1"]})");
  CommandOptions o;
  o.deform = alpha;
  auto r = run("tmmp", kData / "p1xp1.json", o);
  CHECK(r.exit_code == 0);
  CHECK(r.json["deform"] == Json::array({"0/1", "2/1", "0/1", "1/1"}));
  // [0,2] x [0,1] collapses onto a segment at t = 1/2
  CHECK(r.json["report"]["transitions"][0]["kind"] == "Fibration");
  CHECK(r.json["report"]["transitions"][0]["time"] == "1/2");
  CHECK(parse_deform(write_text("bare.json", R"(["1/2", 3])")) ==
        RatVector(Eigen::Matrix<Rational, 2, 1>(Rational(1, 2), Rational(3))));
}

TEST_CASE("JSON output is byte-stable") {
  CommandOptions a, b;
  a.json_out = scratch("stable_a.json");
  b.json_out = scratch("stable_b.json");
  run("tmmp", kData / "blowup.json", a);
  run("tmmp", kData / "blowup.json", b);
  CHECK(slurp(*a.json_out) == slurp(*b.json_out));
  CHECK(real_json(1.0 / 3.0).dump() == "0.333333333333");
}

TEST_CASE("SVG frames") {
  const auto p2 = fixtures::projective_space(3);
  const auto res2 = residual(p2);
  const auto poly2 = moment_polytope(p2, res2);
  auto frames = emit_svg(poly2, {}, run_tmmp(p2, res2), scratch("svg_p2"));
  REQUIRE(frames.size() == 2);
  CHECK(frames[1].time == Rational(1, 3));
  CHECK(slurp(frames[0].file).find("<polygon") != std::string::npos);

  const auto blow = fixtures::blowup();
  const auto resb = residual(blow);
  auto bframes = emit_svg(moment_polytope(blow, resb), {}, run_tmmp(blow, resb), scratch("svg_blowup"));
  CHECK(bframes.size() == 4);
  const std::string first = slurp(bframes[0].file);
  CHECK(first.find("viewBox=\"0 0 800 600\"") != std::string::npos);
  CHECK(first.find(">x5<") != std::string::npos);

  const auto p3 = fixtures::projective_space(4);
  const auto res3 = residual(p3);
  CHECK_THROWS_AS(emit_svg(moment_polytope(p3, res3), {}, run_tmmp(p3, res3), scratch("svg_p3")), Error);

  CommandOptions o;
  o.svg_dir = scratch("svg_cmd");
  auto r = run("tmmp", kData / "blowup.json", o);
  CHECK(r.json["svg_frames"].size() == 4);
}
