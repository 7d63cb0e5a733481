#ifndef TCA_PROBLEM_HPP
#define TCA_PROBLEM_HPP

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tca/chains.hpp"
#include "tca/element.hpp"
#include "tca/interpolation.hpp"

namespace tca {

// Commands as resolved, typed payloads.  All element names are resolved at
// parse time; a problem file that parses is ready to run.

struct AxiomsCommand {
  int index_bound = 3;
  std::vector<CylinderElement> generators;
  ClosureCaps caps{4, 2, 64};
  long random = 1000;
  std::string tca = "both";  // off | literal | corrected | both
  bool substitutions = true;
};

struct RepresentCommand {
  CylinderElement seed;
  long steps = 500;
  int terms = 20;
  int transformations = 50;
  int index_bound = 4;
  int k_bound = 6;
  std::vector<CylinderElement> interior_terms;
  int interior_index_bound = 2;
};

struct InterpolateCommand {
  InterpolationInstance instance;
  ClosureCaps caps{2, 3, 512};
  int separate_steps = 3;
  std::string separate = "auto";  // auto | always | never
};

struct OmitCommand {
  CylinderElement seed;  // defaults to the unit
  TypeFamily families;
  long steps = 2000;
  int tau_bound = 4;
  int henkin_index_bound = 3;
  int decide_coord_bound = 4;
  bool rep_check = true;
};

struct TwinsCommand {
  std::vector<CylinderElement> census;
  int window = -1;
  long steps = 500;
  int branch_depth = 3;
  long min_disagreements = 50;
};

struct OrbitsCommand {
  std::vector<CylinderElement> generators;
  int window = -1;
  int tau_sample = 16;
  int expect_orbits = -1;  // optional check
};

using CommandPayload = std::variant<AxiomsCommand, RepresentCommand, InterpolateCommand,
                                    OmitCommand, TwinsCommand, OrbitsCommand>;

struct Command {
  std::string kind;
  int line = 0;
  CommandPayload payload;
};

/// A parsed, validated problem: the base with its topology, the named
/// elements, and the command list in file order.
struct ProblemFile {
  explicit ProblemFile(BaseSpace b) : base(std::move(b)) {}
  BaseSpace base;
  std::map<std::string, CylinderElement> elements;
  std::vector<Command> commands;
};

struct ParseOverrides {
  int max_support = -1;  // -1: keep the file's (or default) limit
};

/// Parses and validates a problem file.  Throws InputError carrying the
/// offending line on the first problem found (unknown key, undefined name,
/// malformed subset or tuple, arity mismatch).
ProblemFile parse_problem(const std::string& path, const ParseOverrides& overrides = {});

/// Same, from an in-memory document (used by tests).
ProblemFile parse_problem_text(const std::string& text, const ParseOverrides& overrides = {});

}  // namespace tca

#endif
