// Command-line front end: parse a problem file, run its commands, render
// human or machine reports.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 parse error,
// 3 a size limit was hit.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tca/errors.hpp"
#include "tca/problem.hpp"
#include "tca/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"tca: a workbench for topological cylindric set algebras"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the commands of a problem file");
  std::string path;
  std::uint64_t seed = 0;
  long steps = -1;
  int support_cap = -1;
  bool json = false, trace = false;
  run->add_option("file", path, "problem file")->required();
  run->add_option("--seed", seed, "seed for all randomized sampling (default 0)");
  run->add_option("--steps", steps, "override the step counts of stateful commands");
  run->add_option("--support-cap", support_cap, "override the element width limit");
  run->add_flag("--json", json, "one JSON document per command on stdout");
  run->add_flag("--trace", trace, "chain step trace on stderr");

  CLI11_PARSE(app, argc, argv);

  try {
    tca::ParseOverrides overrides;
    overrides.max_support = support_cap;
    auto problem = tca::parse_problem(path, overrides);

    tca::RunOptions options;
    options.seed = seed;
    options.steps_override = steps;
    options.trace = trace ? &std::cerr : nullptr;

    auto result = tca::run_problem(problem, options);
    if (json)
      tca::print_json(result, std::cout);
    else
      tca::print_human(result, std::cout);
    return result.exit_code;
  } catch (const tca::InputError& e) {
    std::cerr << path;
    if (e.line() > 0) std::cerr << ":" << e.line();
    std::cerr << ": error: " << e.what() << '\n';
    return 2;
  } catch (const tca::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 3;
  }
}
