#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tmmp/exactmath.hpp"
#include "tmmp/mmp.hpp"
#include "tmmp/numeric.hpp"
#include "tmmp/polytope.hpp"
#include "tmmp/presentation.hpp"

namespace tmmp {

using Json = nlohmann::ordered_json;

struct InputDocument {
  Presentation presentation;
  std::optional<RatVector> deform;
};

/// Throws SchemaError (with line or field path) or NonRationalValue.
InputDocument parse_document(std::string_view text, std::string_view source = "<input>");
InputDocument parse_input_document(const std::filesystem::path& path);
Presentation parse_input(const std::filesystem::path& path);

/// Deformation vector file: either a bare array or an object with "deform".
RatVector parse_deform(const std::filesystem::path& path);

Json to_json(const Presentation& p, const std::optional<RatVector>& deform = std::nullopt);
std::string serialize(const Presentation& p);

Json rational_json(const Rational& x);
Json vector_json(const RatVector& v);
Json real_json(double x);

Json report_json(const TmmpReport& report);
Json ledger_json(const LedgerCheck& check);

struct SvgFrame {
  Rational time;
  std::filesystem::path file;
};

/// One frame per sampled time: the initial polytope, each wall plus and
/// minus a small offset, and the terminal slice. Requires n = 2.
std::vector<SvgFrame> emit_svg(const HPolytope& polytope, const std::vector<std::string>& labels,
                               const TmmpReport& report, const std::filesystem::path& out_dir);

/// The SVG document for a single slice.
std::string render_frame(const HPolytope& polytope, const std::vector<std::string>& labels,
                         const TmmpReport& report, const Rational& time);

inline constexpr std::string_view kCommands[] = {"validate", "analyze", "relations",
                                                 "tmmp",     "crit",    "verify"};

struct CommandOptions {
  std::string command;
  std::filesystem::path input;
  std::optional<std::filesystem::path> json_out;
  std::optional<std::filesystem::path> svg_dir;
  std::optional<std::filesystem::path> deform;
  Rational q1{1, 10000};
  Rational q2{1, 100000};
  double tol = kValuationTolerance;
};

struct CommandResult {
  int exit_code = 0;
  std::string text;
  Json json;
  std::vector<std::filesystem::path> artifacts;
};

/// Exit codes: 0 ok, 1 domain error, 2 usage error. Writes the JSON and SVG
/// artifacts requested in the options.
CommandResult run_command(const CommandOptions& options);

}  // namespace tmmp
