#include "tca/conjunction.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>

#include "tca/errors.hpp"

namespace tca {

namespace {
constexpr long kSearchBudget = 4'000'000;
}  // namespace

ConjunctionEngine::ConjunctionEngine(const BaseSpace& base) : base_(&base) {}

int ConjunctionEngine::var_of(int coord) const {
  auto it = coord_var_.find(coord);
  return it == coord_var_.end() ? -1 : it->second;
}

int ConjunctionEngine::intern_var(int coord) {
  auto it = coord_var_.find(coord);
  if (it != coord_var_.end()) return it->second;
  int v = static_cast<int>(var_coord_.size());
  var_coord_.push_back(coord);
  coord_var_[coord] = v;
  var_conds_.emplace_back();
  uf_.push_back(v);
  domains_.push_back((1u << base_->points()) - 1u);
  return v;
}

int ConjunctionEngine::find_root(std::vector<int>& uf, int v) const {
  while (uf[v] != v) {
    uf[v] = uf[uf[v]];
    v = uf[v];
  }
  return v;
}

bool ConjunctionEngine::revise(const Cond& c, std::vector<std::uint32_t>& domains,
                               std::vector<int>& changed) const {
  const int n = base_->points();
  const std::size_t k = c.vars.size();
  if (k == 0) return c.elem.rows()[0];

  std::uint32_t dmask[12];
  std::uint32_t supported[12];
  for (std::size_t p = 0; p < k; ++p) {
    dmask[p] = domains[static_cast<std::size_t>(c.vars[p])];
    supported[p] = 0;
  }
  const auto& rows = c.elem.rows();
  int digits[12];
  for (std::size_t p = 0; p < k; ++p) digits[p] = 0;
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    if (rows[idx]) {
      bool ok = true;
      for (std::size_t p = 0; p < k; ++p)
        if (!((dmask[p] >> digits[p]) & 1u)) {
          ok = false;
          break;
        }
      if (ok)
        for (std::size_t p = 0; p < k; ++p) supported[p] |= (1u << digits[p]);
    }
    for (std::size_t p = 0; p < k; ++p) {
      if (++digits[p] < n) break;
      digits[p] = 0;
    }
  }
  for (std::size_t p = 0; p < k; ++p) {
    if (supported[p] == 0) return false;
    if (supported[p] != dmask[p]) {
      domains[static_cast<std::size_t>(c.vars[p])] = supported[p];
      changed.push_back(c.vars[p]);
    }
  }
  return true;
}

// Propagation and search work over a "view": the committed conditions plus
// an optional probe condition at index conds.size().
bool ConjunctionEngine::propagate(const std::vector<const Cond*>& conds,
                                  std::vector<std::uint32_t>& domains,
                                  std::vector<int> seed_conds) const {
  std::deque<int> queue(seed_conds.begin(), seed_conds.end());
  std::vector<char> queued(conds.size(), 0);
  for (int c : queue) queued[static_cast<std::size_t>(c)] = 1;

  // var -> condition ids, built once per propagation over the view
  // (committed adjacency plus the probe's own entries)
  std::vector<int> changed;
  while (!queue.empty()) {
    int ci = queue.front();
    queue.pop_front();
    queued[static_cast<std::size_t>(ci)] = 0;
    changed.clear();
    if (!revise(*conds[static_cast<std::size_t>(ci)], domains, changed)) return false;
    for (int v : changed) {
      if (v < static_cast<int>(var_conds_.size()))
        for (int cj : var_conds_[static_cast<std::size_t>(v)])
          if (!queued[static_cast<std::size_t>(cj)]) {
            queued[static_cast<std::size_t>(cj)] = 1;
            queue.push_back(cj);
          }
      // the probe condition listens on all of its vars
      if (!conds.empty() && conds.size() > conds_.size()) {
        int probe_id = static_cast<int>(conds.size()) - 1;
        const Cond* probe = conds.back();
        if (!queued[static_cast<std::size_t>(probe_id)] &&
            std::find(probe->vars.begin(), probe->vars.end(), v) != probe->vars.end()) {
          queued[static_cast<std::size_t>(probe_id)] = 1;
          queue.push_back(probe_id);
        }
      }
    }
  }
  return true;
}

bool ConjunctionEngine::search(const std::vector<const Cond*>& conds,
                               const std::vector<std::vector<int>>& /*var_conds*/,
                               const std::vector<int>& scope, std::vector<std::uint32_t>& domains,
                               long& budget) const {
  if (--budget < 0) throw std::logic_error("conjunction search budget exceeded");
  int best = -1;
  int best_count = 1 << 20;
  for (int v : scope) {
    int c = std::popcount(domains[static_cast<std::size_t>(v)]);
    if (c > 1 && c < best_count) {
      best = v;
      best_count = c;
    }
  }
  if (best == -1) return true;  // all scope vars decided; domains are arc consistent

  // prefer the cached witness value so satisfiable probes stay cheap
  std::uint32_t dom = domains[static_cast<std::size_t>(best)];
  std::vector<int> order;
  if (best < static_cast<int>(var_coord_.size())) {
    auto it = witness_.find(var_coord_[static_cast<std::size_t>(best)]);
    if (it != witness_.end() && ((dom >> it->second) & 1u)) order.push_back(it->second);
  }
  for (int d = 0; d < base_->points(); ++d)
    if (((dom >> d) & 1u) && (order.empty() || d != order.front())) order.push_back(d);

  for (int d : order) {
    std::vector<std::uint32_t> copy = domains;
    copy[static_cast<std::size_t>(best)] = 1u << d;
    std::vector<int> seeds;
    if (best < static_cast<int>(var_conds_.size()))
      seeds = var_conds_[static_cast<std::size_t>(best)];
    if (conds.size() > conds_.size()) {
      const Cond* probe = conds.back();
      if (std::find(probe->vars.begin(), probe->vars.end(), best) != probe->vars.end())
        seeds.push_back(static_cast<int>(conds.size()) - 1);
    }
    if (propagate(conds, copy, std::move(seeds)) && search(conds, var_conds_, scope, copy, budget)) {
      domains = std::move(copy);
      return true;
    }
  }
  return false;
}

std::optional<Assignment> ConjunctionEngine::solve_with(const CylinderElement* extra) const {
  if (!sat_) return std::nullopt;
  if (extra != nullptr) {
    if (extra->is_zero()) return std::nullopt;
    if (extra->is_one()) extra = nullptr;
  }

  std::vector<const Cond*> view;
  view.reserve(conds_.size() + 1);
  for (const Cond& c : conds_) view.push_back(&c);

  std::vector<std::uint32_t> domains = domains_;
  Cond probe;
  std::vector<int> scope;
  std::vector<int> seeds;

  if (extra == nullptr) {
    scope.resize(var_coord_.size());
    for (std::size_t v = 0; v < var_coord_.size(); ++v) scope[v] = static_cast<int>(v);
    for (std::size_t c = 0; c < conds_.size(); ++c) seeds.push_back(static_cast<int>(c));
  } else {
    // fast path: the cached witness already hits the probe
    {
      const auto& sup = extra->support();
      bool all_known = true;
      std::size_t idx = 0, pw = 1;
      for (int c : sup) {
        auto it = witness_.find(c);
        if (it == witness_.end()) {
          all_known = false;
          break;
        }
        idx += static_cast<std::size_t>(it->second) * pw;
        pw *= static_cast<std::size_t>(base_->points());
      }
      if (all_known && !extra->rows()[idx]) {
        // witness misses the probe; fall through to the full machinery
      } else if (all_known && extra->rows()[idx]) {
        return witness_;
      }
    }

    probe.elem = *extra;
    std::vector<int> roots;
    int next_temp = static_cast<int>(var_coord_.size());
    std::vector<int> temp_vars;
    for (int coord : extra->support()) {
      int v = var_of(coord);
      if (v < 0) {
        v = next_temp++;
        temp_vars.push_back(v);
        domains.push_back((1u << base_->points()) - 1u);
      } else {
        roots.push_back(find_root(uf_, v));
      }
      probe.vars.push_back(v);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (std::size_t v = 0; v < var_coord_.size(); ++v)
      if (std::binary_search(roots.begin(), roots.end(), find_root(uf_, static_cast<int>(v))))
        scope.push_back(static_cast<int>(v));
    scope.insert(scope.end(), temp_vars.begin(), temp_vars.end());
    view.push_back(&probe);
    seeds.push_back(static_cast<int>(view.size()) - 1);
  }

  if (!propagate(view, domains, std::move(seeds))) return std::nullopt;
  long budget = kSearchBudget;
  if (!search(view, var_conds_, scope, domains, budget)) return std::nullopt;

  Assignment out = witness_;
  for (int v : scope) {
    std::uint32_t dom = domains[static_cast<std::size_t>(v)];
    int value = std::countr_zero(dom);
    int coord = v < static_cast<int>(var_coord_.size())
                    ? var_coord_[static_cast<std::size_t>(v)]
                    : 0;
    if (v >= static_cast<int>(var_coord_.size())) {
      // temp var: recover its coordinate from the probe
      for (std::size_t p = 0; p < probe.vars.size(); ++p)
        if (probe.vars[p] == v) coord = probe.elem.support()[p];
    }
    out[coord] = value;
  }
  return out;
}

bool ConjunctionEngine::consistent_with(const CylinderElement& y) const {
  return solve_with(&y).has_value();
}

bool ConjunctionEngine::implies(const CylinderElement& y) const {
  CylinderElement neg = base_->complement(y);
  return !consistent_with(neg);
}

bool ConjunctionEngine::add(const CylinderElement& y) {
  if (y.is_one()) {
    items_.push_back(y);
    return true;
  }
  auto solved = solve_with(&y);
  if (!solved) return false;

  items_.push_back(y);
  Cond c;
  c.elem = y;
  for (int coord : y.support()) c.vars.push_back(intern_var(coord));
  int ci = static_cast<int>(conds_.size());
  conds_.push_back(c);
  for (int v : c.vars) var_conds_[static_cast<std::size_t>(v)].push_back(ci);
  for (std::size_t p = 1; p < c.vars.size(); ++p) {
    int a = find_root(uf_, c.vars[0]);
    int b = find_root(uf_, c.vars[p]);
    if (a != b) uf_[static_cast<std::size_t>(b)] = a;
  }
  witness_ = *solved;

  // refresh the cached arc-consistent domains with the new condition
  std::vector<const Cond*> view;
  for (const Cond& cc : conds_) view.push_back(&cc);
  if (!propagate(view, domains_, {ci}))
    throw std::logic_error("domain wipe after a successful probe");
  return true;
}

std::optional<Assignment> satisfy_conjunction(const BaseSpace& base,
                                              const std::vector<CylinderElement>& items) {
  ConjunctionEngine engine(base);
  for (const auto& x : items)
    if (!engine.add(x)) return std::nullopt;
  return engine.witness();
}

std::string assignment_to_text(const Assignment& a) {
  std::string s = "(";
  bool first = true;
  for (auto [c, v] : a) {
    if (!first) s += ' ';
    s += std::to_string(c) + ":" + std::to_string(v);
    first = false;
  }
  s += ')';
  return s;
}

}  // namespace tca
