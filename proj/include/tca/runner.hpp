#ifndef TCA_RUNNER_HPP
#define TCA_RUNNER_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "tca/problem.hpp"

namespace tca {

struct CheckResult {
  std::string name;
  bool pass = true;
  bool informational = false;  // reported, never drives the exit status
  std::string detail;
};

struct CommandReport {
  std::string kind;
  int line = 0;
  long work = 0;  // deterministic work counter (instances/steps/probes)
  std::vector<CheckResult> checks;
  bool pass() const;
};

struct RunResult {
  std::vector<CommandReport> reports;
  int exit_code = 0;  // 0 pass, 1 check failed, 3 resource cap
};

struct RunOptions {
  std::uint64_t seed = 0;
  long steps_override = -1;  // overrides the step counts of stateful commands
  std::ostream* trace = nullptr;
};

RunResult run_problem(const ProblemFile& problem, const RunOptions& options = {});

void print_human(const RunResult& result, std::ostream& out);

/// One JSON document per command, one per line.  Deterministic given the
/// problem file and the seed: no wall-clock content, insertion-ordered keys.
void print_json(const RunResult& result, std::ostream& out);

}  // namespace tca

#endif
