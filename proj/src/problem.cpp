#include "tca/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tca/errors.hpp"

namespace tca {

namespace {

struct Entry {
  int line;
  std::string key;
  std::string value;
};

struct Section {
  std::string kind;
  std::string name;
  int line;
  std::vector<Entry> entries;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) { throw InputError(msg, line); }

int parse_int(const std::string& tok, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) fail(line, "not a number: '" + tok + "'");
  return v;
}

std::vector<std::string> tokens(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream in(value);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::vector<std::uint32_t> parse_subsets(const std::string& value, int line) {
  std::vector<std::uint32_t> out;
  std::size_t i = 0;
  while (i < value.size()) {
    if (std::isspace(static_cast<unsigned char>(value[i]))) {
      ++i;
      continue;
    }
    if (value[i] != '{') fail(line, "expected '{' in subset list");
    std::size_t close = value.find('}', i);
    if (close == std::string::npos) fail(line, "unterminated subset");
    std::uint32_t mask = 0;
    for (const auto& t : tokens(value.substr(i + 1, close - i - 1))) {
      int p = parse_int(t, line);
      if (p < 0 || p > 31) fail(line, "point out of range: " + t);
      mask |= (1u << p);
    }
    out.push_back(mask);
    i = close + 1;
  }
  return out;
}

std::vector<std::vector<int>> parse_tuples(const std::string& value, int line) {
  std::vector<std::vector<int>> out;
  std::size_t i = 0;
  while (i < value.size()) {
    if (std::isspace(static_cast<unsigned char>(value[i]))) {
      ++i;
      continue;
    }
    if (value[i] != '(') fail(line, "expected '(' in tuple list");
    std::size_t close = value.find(')', i);
    if (close == std::string::npos) fail(line, "unterminated tuple");
    std::vector<int> tup;
    for (const auto& t : tokens(value.substr(i + 1, close - i - 1)))
      tup.push_back(parse_int(t, line));
    out.push_back(std::move(tup));
    i = close + 1;
  }
  return out;
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  fail(line, "expected a boolean, got '" + v + "'");
}

// zero | one | d<i>_<j> | s<c>_<v>
std::optional<CylinderElement> builtin_element(const BaseSpace& base, const std::string& name,
                                               int line) {
  if (name == "zero") return base.zero();
  if (name == "one") return base.one();
  if (name.size() >= 4 && (name[0] == 'd' || name[0] == 's')) {
    std::size_t us = name.find('_');
    if (us == std::string::npos || us < 2 || us + 1 >= name.size()) return std::nullopt;
    const std::string a = name.substr(1, us - 1), b = name.substr(us + 1);
    if (!std::all_of(a.begin(), a.end(), [](char c) { return std::isdigit(c); })) return {};
    if (!std::all_of(b.begin(), b.end(), [](char c) { return std::isdigit(c); })) return {};
    int x = parse_int(a, line), y = parse_int(b, line);
    if (name[0] == 'd') return base.diagonal(x, y);
    if (y < 0 || y >= base.points())
      fail(line, "value " + b + " out of base range in '" + name + "'");
    return base.coord_eq(x, y);
  }
  return std::nullopt;
}

class Resolver {
public:
  Resolver(const BaseSpace& base, const std::map<std::string, CylinderElement>& named)
      : base_(base), named_(named) {}

  CylinderElement element(const std::string& name, int line) const {
    auto it = named_.find(name);
    if (it != named_.end()) return it->second;
    if (auto b = builtin_element(base_, name, line)) return *b;
    fail(line, "undefined element name '" + name + "'");
  }

  std::vector<CylinderElement> elements(const std::string& value, int line) const {
    std::vector<CylinderElement> out;
    for (const auto& t : tokens(value)) out.push_back(element(t, line));
    return out;
  }

private:
  const BaseSpace& base_;
  const std::map<std::string, CylinderElement>& named_;
};

std::vector<Section> split_sections(std::istream& in) {
  std::vector<Section> sections;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      auto inner = trim(s.substr(1, s.size() - 2));
      auto sp = inner.find(' ');
      Section sec;
      sec.line = line;
      if (sp == std::string::npos) {
        sec.kind = inner;
      } else {
        sec.kind = trim(inner.substr(0, sp));
        sec.name = trim(inner.substr(sp + 1));
      }
      if (sec.kind.empty()) fail(line, "empty section header");
      sections.push_back(std::move(sec));
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    if (sections.empty()) fail(line, "entry before any section");
    Entry e{line, trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
    if (e.key.empty()) fail(line, "empty key");
    sections.back().entries.push_back(std::move(e));
  }
  return sections;
}

const Entry* find_entry(const Section& sec, const std::string& key) {
  for (const auto& e : sec.entries)
    if (e.key == key) return &e;
  return nullptr;
}

void check_keys(const Section& sec, const std::vector<std::string>& allowed) {
  for (const auto& e : sec.entries)
    if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end())
      fail(e.line, "unknown key '" + e.key + "' in section [" + sec.kind + "]");
}

BaseSpace build_base(const Section& sec, const ParseOverrides& overrides) {
  check_keys(sec, {"points", "discrete", "opens", "subbasis", "support_cap"});
  const Entry* pts = find_entry(sec, "points");
  if (!pts) fail(sec.line, "[base] needs 'points'");
  int n = parse_int(pts->value, pts->line);
  if (n < 1) fail(pts->line, "points must be >= 1");

  const Entry* d = find_entry(sec, "discrete");
  const Entry* o = find_entry(sec, "opens");
  const Entry* sb = find_entry(sec, "subbasis");
  int given = (d != nullptr) + (o != nullptr) + (sb != nullptr);
  if (given > 1) fail(sec.line, "[base] takes at most one of discrete/opens/subbasis");

  FiniteTopology topo = discrete_topology(n);
  try {
    if (d && !parse_bool(d->value, d->line)) fail(d->line, "discrete = false is not a topology");
    if (o) {
      auto fam = parse_subsets(o->value, o->line);
      auto check = validate_topology(n, fam);
      if (!check.valid) fail(o->line, "opens: " + check.violation);
      topo = FiniteTopology(n, fam);
    }
    if (sb) topo = from_subbasis(n, parse_subsets(sb->value, sb->line));
  } catch (const InputError& e) {
    if (e.line() > 0) throw;
    fail(sec.line, e.what());
  }

  Limits limits;
  if (const Entry* cap = find_entry(sec, "support_cap"))
    limits.max_support = parse_int(cap->value, cap->line);
  if (overrides.max_support > 0) limits.max_support = overrides.max_support;
  return BaseSpace(std::move(topo), limits);
}

CylinderElement build_element(const BaseSpace& base, const Section& sec) {
  check_keys(sec, {"support", "rows"});
  std::vector<int> support;
  if (const Entry* s = find_entry(sec, "support"))
    for (const auto& t : tokens(s->value)) support.push_back(parse_int(t, s->line));
  std::vector<std::vector<int>> rows;
  if (const Entry* r = find_entry(sec, "rows")) rows = parse_tuples(r->value, r->line);
  try {
    return base.element(std::move(support), rows);
  } catch (const InputError& e) {
    fail(sec.line, std::string("element '") + sec.name + "': " + e.what());
  } catch (const ResourceLimitError& e) {
    fail(sec.line, std::string("element '") + sec.name + "': " + e.what());
  }
}

ClosureCaps read_caps(const Section& sec, ClosureCaps caps) {
  if (const Entry* e = find_entry(sec, "support_cap"))
    caps.support_cap = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "depth_cap")) caps.depth_cap = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "max_elements"))
    caps.max_elements = static_cast<std::size_t>(parse_int(e->value, e->line));
  return caps;
}

Command build_axioms(const BaseSpace& base, const Resolver& res, const Section& sec) {
  check_keys(sec, {"index_bound", "generators", "support_cap", "depth_cap", "max_elements",
                   "random", "tca", "substitutions"});
  AxiomsCommand cmd;
  if (const Entry* e = find_entry(sec, "index_bound"))
    cmd.index_bound = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "generators"))
    cmd.generators = res.elements(e->value, e->line);
  else
    cmd.generators = {base.diagonal(0, 1), base.coord_eq(0, 0)};
  cmd.caps = read_caps(sec, cmd.caps);
  if (const Entry* e = find_entry(sec, "random")) cmd.random = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "tca")) {
    cmd.tca = e->value;
    if (cmd.tca != "off" && cmd.tca != "literal" && cmd.tca != "corrected" && cmd.tca != "both")
      fail(e->line, "tca must be off|literal|corrected|both");
  }
  if (const Entry* e = find_entry(sec, "substitutions"))
    cmd.substitutions = parse_bool(e->value, e->line);
  return {"axioms", sec.line, std::move(cmd)};
}

Command build_represent(const Resolver& res, const Section& sec) {
  check_keys(sec, {"seed", "steps", "terms", "transformations", "index_bound", "k_bound",
                   "interior_terms", "interior_index_bound"});
  const Entry* seed = find_entry(sec, "seed");
  if (!seed) fail(sec.line, "[represent] needs 'seed'");
  RepresentCommand cmd;
  cmd.seed = res.element(trim(seed->value), seed->line);
  if (cmd.seed.is_zero()) fail(seed->line, "representation seed must be nonzero");
  if (const Entry* e = find_entry(sec, "steps")) cmd.steps = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "terms")) cmd.terms = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "transformations"))
    cmd.transformations = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "index_bound"))
    cmd.index_bound = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "k_bound")) cmd.k_bound = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "interior_terms"))
    cmd.interior_terms = res.elements(e->value, e->line);
  if (const Entry* e = find_entry(sec, "interior_index_bound"))
    cmd.interior_index_bound = parse_int(e->value, e->line);
  return {"represent", sec.line, std::move(cmd)};
}

Command build_interpolate(const BaseSpace& base, const Resolver& res, const Section& sec) {
  check_keys(sec, {"x1", "x2", "a", "c", "support_cap", "depth_cap", "max_elements",
                   "separate_steps", "separate"});
  const Entry* x1 = find_entry(sec, "x1");
  const Entry* x2 = find_entry(sec, "x2");
  const Entry* a = find_entry(sec, "a");
  const Entry* c = find_entry(sec, "c");
  if (!x1 || !x2 || !a || !c) fail(sec.line, "[interpolate] needs x1, x2, a and c");
  InterpolateCommand cmd;
  try {
    cmd.instance = make_instance(base, res.elements(x1->value, x1->line),
                                 res.elements(x2->value, x2->line),
                                 res.element(trim(a->value), a->line),
                                 res.element(trim(c->value), c->line));
  } catch (const PreconditionError& e) {
    fail(sec.line, e.what());
  }
  cmd.caps = read_caps(sec, cmd.caps);
  if (const Entry* e = find_entry(sec, "separate_steps"))
    cmd.separate_steps = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "separate")) {
    cmd.separate = e->value;
    if (cmd.separate != "auto" && cmd.separate != "always" && cmd.separate != "never")
      fail(e->line, "separate must be auto|always|never");
  }
  return {"interpolate", sec.line, std::move(cmd)};
}

Command build_omit(const BaseSpace& base, const Resolver& res, const Section& sec) {
  check_keys(sec, {"seed", "family", "steps", "tau_bound", "henkin_index_bound",
                   "decide_coord_bound", "rep_check"});
  OmitCommand cmd;
  cmd.seed = base.one();
  if (const Entry* e = find_entry(sec, "seed")) cmd.seed = res.element(trim(e->value), e->line);
  for (const auto& e : sec.entries) {
    if (e.key != "family") continue;
    const std::string v = trim(e.value);
    if (v.rfind("chain(", 0) == 0) {
      if (v.back() != ')') fail(e.line, "unterminated chain(...) family");
      auto args = tokens(v.substr(6, v.size() - 7));
      if (args.size() != 2) fail(e.line, "chain(start length) takes two numbers");
      cmd.families.families.push_back(TypeFamily::chain_members(
          base, parse_int(args[0], e.line), parse_int(args[1], e.line)));
    } else {
      cmd.families.families.push_back(res.elements(v, e.line));
    }
  }
  if (cmd.families.empty()) fail(sec.line, "[omit] needs at least one 'family'");
  try {
    cmd.families.validate(base);
  } catch (const InputError& e) {
    fail(sec.line, e.what());
  }
  if (const Entry* e = find_entry(sec, "steps")) cmd.steps = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "tau_bound")) cmd.tau_bound = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "henkin_index_bound"))
    cmd.henkin_index_bound = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "decide_coord_bound"))
    cmd.decide_coord_bound = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "rep_check")) cmd.rep_check = parse_bool(e->value, e->line);
  return {"omit", sec.line, std::move(cmd)};
}

Command build_twins(const BaseSpace& base, const Resolver& res, const Section& sec) {
  check_keys(sec, {"census", "window", "steps", "branch_depth", "min_disagreements"});
  TwinsCommand cmd;
  if (const Entry* e = find_entry(sec, "census"))
    cmd.census = res.elements(e->value, e->line);
  else
    cmd.census = {base.coord_eq(0, 0), base.coord_eq(1, 0)};
  if (const Entry* e = find_entry(sec, "window")) cmd.window = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "steps")) cmd.steps = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "branch_depth"))
    cmd.branch_depth = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "min_disagreements"))
    cmd.min_disagreements = parse_int(e->value, e->line);
  return {"twins", sec.line, std::move(cmd)};
}

Command build_orbits(const Resolver& res, const Section& sec) {
  check_keys(sec, {"generators", "window", "tau_sample", "expect_orbits"});
  const Entry* g = find_entry(sec, "generators");
  if (!g) fail(sec.line, "[orbits] needs 'generators'");
  OrbitsCommand cmd;
  cmd.generators = res.elements(g->value, g->line);
  if (const Entry* e = find_entry(sec, "window")) cmd.window = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "tau_sample"))
    cmd.tau_sample = parse_int(e->value, e->line);
  if (const Entry* e = find_entry(sec, "expect_orbits"))
    cmd.expect_orbits = parse_int(e->value, e->line);
  return {"orbits", sec.line, std::move(cmd)};
}

ProblemFile build(std::istream& in, const ParseOverrides& overrides) {
  auto sections = split_sections(in);
  if (sections.empty()) fail(1, "empty problem file");
  if (sections.front().kind != "base") fail(sections.front().line, "first section must be [base]");

  ProblemFile problem(build_base(sections.front(), overrides));

  for (std::size_t i = 1; i < sections.size(); ++i) {
    const Section& sec = sections[i];
    if (sec.kind == "base") fail(sec.line, "duplicate [base] section");
    if (sec.kind != "element") continue;
    if (sec.name.empty()) fail(sec.line, "[element] needs a name");
    if (builtin_element(problem.base, sec.name, sec.line))
      fail(sec.line, "element name '" + sec.name + "' shadows a builtin");
    if (problem.elements.count(sec.name)) fail(sec.line, "duplicate element '" + sec.name + "'");
    problem.elements.emplace(sec.name, build_element(problem.base, sec));
  }

  Resolver res(problem.base, problem.elements);
  for (std::size_t i = 1; i < sections.size(); ++i) {
    const Section& sec = sections[i];
    if (sec.kind == "element") continue;
    if (sec.kind == "axioms")
      problem.commands.push_back(build_axioms(problem.base, res, sec));
    else if (sec.kind == "represent")
      problem.commands.push_back(build_represent(res, sec));
    else if (sec.kind == "interpolate")
      problem.commands.push_back(build_interpolate(problem.base, res, sec));
    else if (sec.kind == "omit")
      problem.commands.push_back(build_omit(problem.base, res, sec));
    else if (sec.kind == "twins")
      problem.commands.push_back(build_twins(problem.base, res, sec));
    else if (sec.kind == "orbits")
      problem.commands.push_back(build_orbits(res, sec));
    else
      fail(sec.line, "unknown section [" + sec.kind + "]");
  }
  return problem;
}

}  // namespace

ProblemFile parse_problem(const std::string& path, const ParseOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file: " + path);
  return build(in, overrides);
}

ProblemFile parse_problem_text(const std::string& text, const ParseOverrides& overrides) {
  std::istringstream in(text);
  return build(in, overrides);
}

}  // namespace tca
