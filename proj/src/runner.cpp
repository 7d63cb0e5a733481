#include "tca/runner.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "tca/axioms.hpp"
#include "tca/census.hpp"
#include "tca/errors.hpp"
#include "tca/representation.hpp"
#include "tca/rng.hpp"

namespace tca {

namespace {

using nlohmann::ordered_json;

void add_check(CommandReport& report, std::string name, bool pass, std::string detail,
               bool informational = false) {
  report.checks.push_back({std::move(name), pass, informational, std::move(detail)});
}

std::string verdict_detail(const LawVerdict& v) {
  std::string d = std::to_string(v.instances) + " instance(s)";
  if (v.resource_skips > 0) d += ", " + std::to_string(v.resource_skips) + " over cap";
  if (v.counterexample) d += "; " + v.counterexample->describe();
  return d;
}

long report_instances(const AxiomReport& rep) {
  long total = 0;
  for (const auto& v : rep.verdicts) total += v.instances;
  return total;
}

// --- axioms -----------------------------------------------------------------

CommandReport run_axioms(const BaseSpace& base, const AxiomsCommand& cmd, int line,
                         const RunOptions& options, std::uint64_t salt) {
  CommandReport report{"axioms", line, 0, {}};
  auto sample = sg_closure(base, cmd.generators, cmd.caps).elements();

  auto exhaustive = check_ca_axioms(base, cmd.index_bound, sample);
  report.work += report_instances(exhaustive);
  for (const auto& v : exhaustive.verdicts)
    add_check(report, "ca." + v.law_id, v.holds, verdict_detail(v));

  if (cmd.random > 0) {
    auto random = run_laws_random(base, ca_laws(), cmd.index_bound, cmd.random,
                                  mix_seed(options.seed, salt));
    report.work += report_instances(random);
    bool all = random.all_hold();
    std::string detail = std::to_string(cmd.random) + " random instance(s)";
    for (const auto& v : random.verdicts)
      if (!v.counterexample.has_value()) continue;
      else detail += "; " + v.counterexample->describe();
    add_check(report, "ca.random", all, detail);
  }

  if (cmd.tca != "off") {
    const bool literal_normative = cmd.tca == "literal";
    auto run_reading = [&](InteriorReading reading, const char* label, bool normative) {
      auto rep = check_tca_axioms(base, cmd.index_bound, sample, reading);
      report.work += report_instances(rep);
      for (const auto& v : rep.verdicts) {
        bool informational = !normative || v.law_id.rfind("int.substitution", 0) == 0;
        add_check(report, std::string("tca.") + label + "." + v.law_id, v.holds,
                  verdict_detail(v), informational);
      }
    };
    if (cmd.tca == "literal" || cmd.tca == "both")
      run_reading(InteriorReading::literal, "literal", literal_normative);
    if (cmd.tca == "corrected" || cmd.tca == "both")
      run_reading(InteriorReading::corrected, "corrected", !literal_normative);
  }

  if (cmd.substitutions) {
    std::vector<FiniteTransformation> taus = {FiniteTransformation::identity()};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) taus.push_back(FiniteTransformation::replace(i, j));
    Rng rng(mix_seed(options.seed, salt + 1));
    TransformationSampleOptions topt;
    topt.domain_bound = cmd.index_bound;
    topt.value_hi = cmd.index_bound + 2;
    for (auto& t : sample_transformations(6, topt, rng)) taus.push_back(std::move(t));
    auto rep = check_substitution_laws(base, sample, taus);
    report.work += report_instances(rep);
    for (const auto& v : rep.verdicts)
      add_check(report, v.law_id, v.holds, verdict_detail(v));
  }
  return report;
}

// --- represent ---------------------------------------------------------------

std::vector<CylinderElement> term_sample(const BaseSpace& base, const CylinderElement& seed,
                                         int index_bound, int count) {
  ClosureCaps caps{index_bound, 2, static_cast<std::size_t>(count)};
  return sg_closure(base, {seed}, caps).elements();
}

CommandReport run_represent(const BaseSpace& base, const RepresentCommand& cmd, int line,
                            const RunOptions& options, std::uint64_t salt) {
  CommandReport report{"represent", line, 0, {}};
  long steps = options.steps_override > 0 ? options.steps_override : cmd.steps;

  ScheduleOptions sched;
  sched.henkin_index_bound = std::min(cmd.index_bound, 3);
  sched.decide_coord_bound = cmd.index_bound;
  sched.rng_seed = mix_seed(options.seed, salt);
  sched.trace = options.trace;
  auto rep = build_representation(base, cmd.seed, steps, sched);
  report.work += rep.chain().step_count();
  add_check(report, "chain.proper", true,
            std::to_string(rep.chain().conditions().size()) + " condition(s), witness " +
                assignment_to_text(rep.chain().witness()));

  add_check(report, "image.seed", rep.member(cmd.seed, FiniteTransformation::identity()),
            "identity class in the image of the seed");

  auto henkin = verify_henkin_invariant(rep.chain());
  add_check(report, "henkin.invariant", henkin.ok(),
            std::to_string(henkin.processed) + " processed, " +
                std::to_string(henkin.applicable) + " applicable, " +
                std::to_string(henkin.failures) + " failure(s)");

  Rng rng(mix_seed(options.seed, salt + 1));
  TransformationSampleOptions topt;
  topt.domain_bound = cmd.index_bound;
  topt.value_hi = cmd.k_bound;
  auto taus = sample_transformations(cmd.transformations, topt, rng);
  auto terms = term_sample(base, cmd.seed, cmd.index_bound, cmd.terms);
  auto hom = verify_homomorphism(rep, terms, taus, {});
  report.work += hom.meet_checks + hom.complement_checks + hom.diag_checks + hom.cyl_checks;
  {
    std::string detail = std::to_string(terms.size()) + " term(s) x " +
                         std::to_string(taus.size()) + " transformation(s)";
    for (std::size_t i = 0; i < hom.failures.size() && i < 3; ++i)
      detail += "; " + hom.failures[i];
    add_check(report, "homomorphism", hom.ok(), detail);
  }

  if (!cmd.interior_terms.empty()) {
    auto q = interior_witnesses(rep, cmd.interior_terms, cmd.interior_index_bound, cmd.k_bound);
    // sampled transformations keep their moved values clear of the tested
    // indices so the materialized tables stay decisive
    Rng rng2(mix_seed(options.seed, salt + 2));
    TransformationSampleOptions iopt;
    iopt.domain_bound = cmd.interior_index_bound + 2;
    iopt.value_lo = cmd.interior_index_bound;
    iopt.value_hi = cmd.k_bound;
    auto itaus = sample_transformations(cmd.transformations / 2 + 1, iopt, rng2);
    for (const auto& p : cmd.interior_terms) {
      bool all = true;
      int added = 0;
      long rows = 0;
      for (int i = 0; i < cmd.interior_index_bound; ++i) {
        auto r = verify_interior_rep(rep, q, p, i, itaus);
        all = all && r.all_agree();
        added += r.tables_added;
        rows += static_cast<long>(r.rows.size());
      }
      report.work += rows;
      add_check(report, "interior.rep " + p.to_text(), all,
                std::to_string(rows) + " row(s), " + std::to_string(added) +
                    " table(s) materialized on demand");
    }
  }
  return report;
}

// --- interpolate --------------------------------------------------------------

CommandReport run_interpolate(const BaseSpace& base, const InterpolateCommand& cmd, int line) {
  CommandReport report{"interpolate", line, 0, {}};
  auto res = find_interpolant(base, cmd.instance, cmd.caps);
  report.work += static_cast<long>(interpolant_candidates(base, cmd.instance, cmd.caps).size());
  if (res.found) {
    add_check(report, "interpolant", true,
              res.interpolant.to_text() + " via " + res.term + " within caps (" +
                  std::to_string(cmd.caps.support_cap) + "," +
                  std::to_string(cmd.caps.depth_cap) + ")");
  } else {
    std::string detail = "not found within caps (" + std::to_string(cmd.caps.support_cap) + "," +
                         std::to_string(cmd.caps.depth_cap) + ")";
    if (res.truncated) detail += ", search truncated";
    add_check(report, "interpolant", false, detail, cmd.separate != "never");
  }

  const bool run_filters = cmd.separate == "always" || (cmd.separate == "auto" && !res.found);
  if (run_filters) {
    auto sep = build_separating_filters(base, cmd.instance, cmd.separate_steps, cmd.caps);
    report.work += sep.common_size;
    std::string detail;
    if (sep.proper) {
      detail = "common filter proper over " + std::to_string(sep.common_size) +
               " element(s); witness replay failures " +
               std::to_string(sep.f1_witness_failures) + "/" +
               std::to_string(sep.f2_witness_failures) + "; common restriction agree/disagree " +
               std::to_string(sep.common_agreements) + "/" +
               std::to_string(sep.common_disagreements);
    } else {
      detail = "properness fails at prefixes (" + std::to_string(sep.violation_prefix_a) + "," +
               std::to_string(sep.violation_prefix_c) + ") with b0=" +
               sep.violating_b0.to_text() + " b1=" + sep.violating_b1.to_text();
    }
    // with an interpolant at hand the filter must collapse; without one it
    // must stay proper
    add_check(report, "filters", sep.proper != res.found, detail);
    add_check(report, "filters.note", true, sep.footer, true);
  }
  return report;
}

// --- omit ----------------------------------------------------------------------

CommandReport run_omit(const BaseSpace& base, const OmitCommand& cmd, int line,
                       const RunOptions& options, std::uint64_t salt) {
  CommandReport report{"omit", line, 0, {}};
  long steps = options.steps_override > 0 ? options.steps_override : cmd.steps;
  ScheduleOptions sched;
  sched.henkin_index_bound = cmd.henkin_index_bound;
  sched.omit_tau_bound = cmd.tau_bound;
  sched.decide_coord_bound = cmd.decide_coord_bound;
  sched.rng_seed = mix_seed(options.seed, salt);
  sched.trace = options.trace;

  auto chain = run_schedule(base, cmd.seed, cmd.families, steps, sched);
  report.work += chain.step_count();
  add_check(report, "chain.proper", true,
            std::to_string(chain.conditions().size()) + " condition(s)");

  auto omit = verify_omit_invariant(chain, cmd.families);
  add_check(report, "omit.invariant", omit.ok(),
            std::to_string(omit.pairs) + " scheduled pair(s), " + std::to_string(omit.failures) +
                " failure(s)");

  auto henkin = verify_henkin_invariant(chain);
  add_check(report, "henkin.invariant", henkin.ok(),
            std::to_string(henkin.processed) + " processed, " + std::to_string(henkin.failures) +
                " failure(s)");

  if (cmd.rep_check) {
    Representation rep(chain, cmd.seed);
    long failures = 0;
    for (const auto& rec : chain.omit_log())
      if (rep.member(rec.member, rec.tau)) ++failures;
    report.work += static_cast<long>(chain.omit_log().size());
    add_check(report, "rep.misses_families", failures == 0,
              std::to_string(chain.omit_log().size()) + " (family, tau) pair(s), " +
                  std::to_string(failures) + " realized");
  }
  return report;
}

// --- twins -----------------------------------------------------------------------

CommandReport run_twins(const BaseSpace& base, const TwinsCommand& cmd, int line,
                        const RunOptions& options, std::uint64_t salt) {
  CommandReport report{"twins", line, 0, {}};
  long steps = options.steps_override > 0 ? options.steps_override : cmd.steps;
  CensusSubalgebra census(base, cmd.census, cmd.window);

  TwinGameOptions opt;
  opt.rng_seed = mix_seed(options.seed, salt);
  opt.trace = options.trace;
  auto game = twin_game(base, census, steps, opt);
  report.work += game.t.step_count() + game.s.step_count();

  add_check(report, "twins.disagreements", game.disagreements >= cmd.min_disagreements,
            std::to_string(game.disagreements) + " disagreement(s) over " +
                std::to_string(game.splits) + " split(s), threshold " +
                std::to_string(cmd.min_disagreements));
  add_check(report, "twins.principality", game.principality_ok,
            std::to_string(game.common_atoms.size()) + " census atom(s) below both meets");

  if (cmd.branch_depth > 0) {
    auto leaves = branch_tree(base, census, cmd.branch_depth, opt);
    long pairs = 0, disagreeing = 0;
    for (std::size_t i = 0; i < leaves.size(); ++i)
      for (std::size_t j = i + 1; j < leaves.size(); ++j) {
        ++pairs;
        std::vector<CylinderElement> probes = leaves[i].conditions();
        probes.insert(probes.end(), leaves[j].conditions().begin(),
                      leaves[j].conditions().end());
        if (count_disagreements(leaves[i], leaves[j], probes) > 0) ++disagreeing;
      }
    report.work += pairs;
    add_check(report, "twins.branches", disagreeing == pairs,
              std::to_string(leaves.size()) + " leaves, " + std::to_string(disagreeing) + "/" +
                  std::to_string(pairs) + " pair(s) disagree");
  }
  return report;
}

// --- orbits -------------------------------------------------------------------------

CommandReport run_orbits(const BaseSpace& base, const OrbitsCommand& cmd, int line,
                         const RunOptions& options, std::uint64_t salt) {
  CommandReport report{"orbits", line, 0, {}};
  CensusSubalgebra b0(base, cmd.generators, cmd.window);
  const auto& atoms = b0.atoms();
  auto perms = enumerate_permutations(b0.window());

  // group action laws: identity acts trivially, composition composes
  bool action_ok = true;
  for (const auto& a : atoms)
    if (apply_perm_to_filter(b0, perms.front(), a) != a) action_ok = false;
  for (const auto& p1 : perms)
    for (const auto& p2 : perms) {
      std::vector<int> comp(p1.size());
      for (std::size_t i = 0; i < p1.size(); ++i)
        comp[i] = p1[static_cast<std::size_t>(p2[i])];
      for (const auto& a : atoms) {
        ++report.work;
        if (apply_perm_to_filter(b0, comp, a) !=
            apply_perm_to_filter(b0, p1, apply_perm_to_filter(b0, p2, a)))
          action_ok = false;
      }
    }
  add_check(report, "orbits.group_action", action_ok,
            std::to_string(atoms.size()) + " atom(s) x " + std::to_string(perms.size()) +
                " permutation(s)");

  auto rep = orbit_count(b0);

  // independent oracle: pairwise search over all permutations, no closure
  std::vector<int> oracle_class(atoms.size(), -1);
  int oracle_count = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (oracle_class[i] >= 0) continue;
    oracle_class[i] = oracle_count++;
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (oracle_class[j] >= 0) continue;
      for (const auto& p : perms)
        if (apply_perm_to_filter(b0, p, atoms[i]) == atoms[j]) {
          oracle_class[j] = oracle_class[i];
          break;
        }
    }
  }
  bool oracle_match = oracle_count == rep.orbit_count;
  for (std::size_t c = 0; c < rep.classes.size() && oracle_match; ++c)
    for (int idx : rep.classes[c])
      if (oracle_class[static_cast<std::size_t>(idx)] !=
          oracle_class[static_cast<std::size_t>(rep.classes[c].front())])
        oracle_match = false;
  add_check(report, "orbits.oracle", oracle_match,
            std::to_string(rep.orbit_count) + " orbit(s), oracle " +
                std::to_string(oracle_count));

  if (cmd.expect_orbits >= 0)
    add_check(report, "orbits.expected", rep.orbit_count == cmd.expect_orbits,
              "expected " + std::to_string(cmd.expect_orbits) + ", found " +
                  std::to_string(rep.orbit_count));

  // injectivity stage: the identity class sits in the image of everything
  // above the atom
  bool injective = true;
  const FiniteTransformation id;
  for (const auto& f : atoms)
    for (const auto& b : (b0.elements().empty() ? atoms : b0.elements())) {
      if (b.is_zero() || !base.leq(f, b)) continue;
      ++report.work;
      if (!base.leq(f, base.substitute(id, b))) injective = false;
    }
  add_check(report, "orbits.identity_image", injective, "identity class per atom");

  // base isomorphism search cross-check on atom pairs
  bool iso_ok = true;
  long searched = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      bool same_orbit = oracle_class[i] == oracle_class[j];
      auto iso = base_iso_search(b0, atoms[i], atoms[j], cmd.tau_sample,
                                 mix_seed(options.seed, salt));
      ++searched;
      if (iso.found != same_orbit) iso_ok = false;
      if (iso.found && !iso.map_verified) iso_ok = false;
    }
  report.work += searched;
  add_check(report, "orbits.base_iso", iso_ok,
            std::to_string(searched) + " atom pair(s) searched over " +
                std::to_string(perms.size()) + " permutation(s)");
  return report;
}

}  // namespace

bool CommandReport::pass() const {
  for (const auto& c : checks)
    if (!c.informational && !c.pass) return false;
  return true;
}

RunResult run_problem(const ProblemFile& problem, const RunOptions& options) {
  RunResult result;
  bool any_fail = false, any_resource = false;
  for (std::size_t ci = 0; ci < problem.commands.size(); ++ci) {
    const Command& cmd = problem.commands[ci];
    const std::uint64_t salt = 1000 * (ci + 1);
    CommandReport report{cmd.kind, cmd.line, 0, {}};
    try {
      if (const auto* a = std::get_if<AxiomsCommand>(&cmd.payload))
        report = run_axioms(problem.base, *a, cmd.line, options, salt);
      else if (const auto* r = std::get_if<RepresentCommand>(&cmd.payload))
        report = run_represent(problem.base, *r, cmd.line, options, salt);
      else if (const auto* i = std::get_if<InterpolateCommand>(&cmd.payload))
        report = run_interpolate(problem.base, *i, cmd.line);
      else if (const auto* o = std::get_if<OmitCommand>(&cmd.payload))
        report = run_omit(problem.base, *o, cmd.line, options, salt);
      else if (const auto* t = std::get_if<TwinsCommand>(&cmd.payload))
        report = run_twins(problem.base, *t, cmd.line, options, salt);
      else if (const auto* g = std::get_if<OrbitsCommand>(&cmd.payload))
        report = run_orbits(problem.base, *g, cmd.line, options, salt);
    } catch (const ResourceLimitError& e) {
      add_check(report, "resource", false, e.what());
      any_resource = true;
    } catch (const FamilyExhausted& e) {
      add_check(report, "family", false, e.what());
    } catch (const PreconditionError& e) {
      add_check(report, "precondition", false, e.what());
    }
    if (!report.pass()) any_fail = true;
    result.reports.push_back(std::move(report));
  }
  result.exit_code = any_resource ? 3 : (any_fail ? 1 : 0);
  return result;
}

void print_human(const RunResult& result, std::ostream& out) {
  for (const auto& rep : result.reports) {
    out << "== " << rep.kind << " (line " << rep.line << ") "
        << (rep.pass() ? "pass" : "FAIL") << ", work " << rep.work << '\n';
    for (const auto& c : rep.checks) {
      out << "  " << std::left << std::setw(44) << c.name
          << (c.pass ? (c.informational ? "info-ok  " : "pass     ")
                     : (c.informational ? "info-fail" : "FAIL     "))
          << ' ' << c.detail << '\n';
    }
  }
  int fails = 0;
  for (const auto& rep : result.reports)
    if (!rep.pass()) ++fails;
  out << (fails == 0 ? "all commands passed" : std::to_string(fails) + " command(s) failed")
      << '\n';
}

void print_json(const RunResult& result, std::ostream& out) {
  for (const auto& rep : result.reports) {
    ordered_json j;
    j["command"] = rep.kind;
    j["line"] = rep.line;
    j["pass"] = rep.pass();
    j["work"] = rep.work;
    j["checks"] = ordered_json::array();
    for (const auto& c : rep.checks) {
      ordered_json cj;
      cj["name"] = c.name;
      cj["pass"] = c.pass;
      cj["informational"] = c.informational;
      cj["detail"] = c.detail;
      j["checks"].push_back(std::move(cj));
    }
    out << j.dump() << '\n';
  }
}

}  // namespace tca
