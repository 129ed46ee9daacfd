#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tmmp/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact toric MMP engine"};
  app.name("tmmp-engine");

  tmmp::CommandOptions options;
  std::string input, json_out, svg_dir, deform;
  std::string q1 = tmmp::to_string(options.q1), q2 = tmmp::to_string(options.q2);
  const std::vector<std::string> commands(std::begin(tmmp::kCommands), std::end(tmmp::kCommands));

  app.add_option("command", options.command, "validate | analyze | relations | tmmp | crit | verify")
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("input", input, "input presentation (JSON)")->required();
  app.add_option("--json", json_out, "write the report as JSON to this path");
  app.add_option("--svg", svg_dir, "write SVG frames of the polytope flow to this directory");
  app.add_option("--q1", q1, "larger q sample for verify (p/q)");
  app.add_option("--q2", q2, "smaller q sample for verify (p/q)");
  app.add_option("--tol", options.tol, "valuation match tolerance");
  app.add_option("--deform", deform, "JSON file with replacement support constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto r1 = tmmp::parse_rational(q1), r2 = tmmp::parse_rational(q2);
  if (!r1 || !r2 || *r1 <= 0 || *r2 <= 0 || *r1 <= *r2) {
    std::cerr << "--q1 and --q2 must be positive rationals p/q with q1 > q2\n";
    return 2;
  }
  options.q1 = *r1;
  options.q2 = *r2;
  options.input = input;
  if (!json_out.empty()) options.json_out = json_out;
  if (!svg_dir.empty()) options.svg_dir = svg_dir;
  if (!deform.empty()) options.deform = deform;

  const tmmp::CommandResult result = tmmp::run_command(options);
  (result.exit_code == 0 ? std::cout : std::cerr) << result.text;
  return result.exit_code;
}
