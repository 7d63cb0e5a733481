#include "tca/chains.hpp"

#include <algorithm>
#include <ostream>

#include "tca/errors.hpp"
#include "tca/rng.hpp"

namespace tca {

Task Task::henkin(int k, CylinderElement x) {
  Task t;
  t.kind = TaskKind::henkin;
  t.coordinate = k;
  t.element = std::move(x);
  return t;
}

Task Task::decide(CylinderElement a) {
  Task t;
  t.kind = TaskKind::decide;
  t.element = std::move(a);
  return t;
}

Task Task::omit(int family, FiniteTransformation tau) {
  Task t;
  t.kind = TaskKind::omit;
  t.family = family;
  t.tau = std::move(tau);
  return t;
}

std::string Task::to_text() const {
  switch (kind) {
    case TaskKind::henkin:
      return "henkin(k=" + std::to_string(coordinate) + " x=" + element.to_text() + ")";
    case TaskKind::decide:
      return "decide(" + element.to_text() + ")";
    case TaskKind::omit:
      return "omit(family=" + std::to_string(family) + " tau=" + tau.to_text() + ")";
    case TaskKind::separate:
      return "separate";
  }
  return "?";
}

std::vector<CylinderElement> TypeFamily::chain_members(const BaseSpace& base, int start,
                                                       int longest) {
  std::vector<CylinderElement> out;
  CylinderElement acc = base.one();
  for (int m = 0; m < longest; ++m) {
    acc = base.meet(acc, base.coord_eq(start + m, 0));
    out.push_back(acc);
  }
  return out;
}

void TypeFamily::validate(const BaseSpace& base, int depth) const {
  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    const auto& fam = families[fi];
    if (fam.empty()) throw InputError("type family " + std::to_string(fi) + " is empty");
    for (const auto& x : fam)
      if (x.is_zero())
        throw InputError("type family " + std::to_string(fi) + " holds a zero element");
    // sub-meets up to the configured depth
    const std::size_t n = fam.size();
    std::vector<std::size_t> pick;
    for (std::size_t sz = 2; sz <= std::min<std::size_t>(static_cast<std::size_t>(depth), n);
         ++sz) {
      pick.assign(sz, 0);
      for (std::size_t i = 0; i < sz; ++i) pick[i] = i;
      while (true) {
        CylinderElement acc = base.one();
        for (std::size_t i : pick) acc = base.meet(acc, fam[i]);
        if (acc.is_zero())
          throw InputError("type family " + std::to_string(fi) + " has a zero sub-meet");
        // next combination
        std::size_t j = sz;
        while (j > 0 && pick[j - 1] == n - sz + (j - 1)) --j;
        if (j == 0) break;
        ++pick[j - 1];
        for (std::size_t l = j; l < sz; ++l) pick[l] = pick[l - 1] + 1;
      }
    }
  }
}

ChainState::ChainState(const BaseSpace& base, CylinderElement seed, std::uint64_t rng_seed)
    : engine_(base), seed_(std::move(seed)), rng_state_(rng_seed) {
  if (seed_.is_zero()) throw PreconditionError("chain seed must be nonzero");
  commit(seed_, "seed");
}

bool ChainState::contains(const CylinderElement& y) const {
  auto it = decided_.find(y);
  if (it != decided_.end()) return it->second;
  return engine_.implies(y);
}

Membership ChainState::membership(const CylinderElement& x, bool force) {
  auto it = decided_.find(x);
  if (it != decided_.end()) return it->second ? Membership::in : Membership::out;
  if (engine_.implies(x)) {
    decided_[x] = true;
    return Membership::in;
  }
  if (engine_.implies(base().complement(x))) {
    decided_[x] = false;
    return Membership::out;
  }
  if (!force) return Membership::undecided;
  step(Task::decide(x));
  return decided_.at(x) ? Membership::in : Membership::out;
}

int ChainState::fresh_witness(int k, const CylinderElement& x) const {
  for (int u = 0;; ++u) {
    if (u == k) continue;
    if (used_witnesses_.count(u)) continue;
    if (support_coords_.count(u)) continue;
    if (std::binary_search(x.support().begin(), x.support().end(), u)) continue;
    return u;
  }
}

void ChainState::commit(const CylinderElement& y, const std::string& label) {
  if (!engine_.add(y))
    throw PreconditionError("commit would break properness: " + label + " " + y.to_text());
  for (int c : y.support()) support_coords_.insert(c);
  trace_line(label, y);
}

void ChainState::trace_line(const std::string& task, const CylinderElement& committed) {
  if (!trace_) return;
  *trace_ << "step=" << step_count_ << " task=" << task << " commit=" << committed.to_text()
          << " witness=" << assignment_to_text(engine_.witness()) << '\n';
}

void ChainState::step(const Task& task, const TypeFamily* families) {
  ++step_count_;
  const BaseSpace& B = base();
  switch (task.kind) {
    case TaskKind::henkin: {
      const int k = task.coordinate;
      const CylinderElement& x = task.element;
      const int u = fresh_witness(k, x);
      auto projected = B.cylindrify(k, x);
      auto witness_condition =
          B.join(B.complement(projected), B.substitute(FiniteTransformation::replace(k, u), x));
      used_witnesses_.insert(u);
      commit(witness_condition, task.to_text() + " u=" + std::to_string(u));
      henkin_log_.push_back({k, x, u});
      break;
    }
    case TaskKind::decide: {
      const CylinderElement& a = task.element;
      auto it = decided_.find(a);
      if (it != decided_.end()) break;
      if (engine_.implies(a)) {
        decided_[a] = true;
        break;
      }
      if (engine_.consistent_with(a)) {  // prefer the positive side
        commit(a, task.to_text());
        decided_[a] = true;
      } else {
        commit(B.complement(a), task.to_text() + " negated");
        decided_[a] = false;
      }
      break;
    }
    case TaskKind::omit: {
      if (families == nullptr || task.family < 0 ||
          static_cast<std::size_t>(task.family) >= families->families.size())
        throw PreconditionError("omit task without a matching family");
      const auto& fam = families->families[static_cast<std::size_t>(task.family)];
      for (const auto& x : fam) {
        auto blocked = B.complement(B.substitute(task.tau, x));
        if (engine_.consistent_with(blocked)) {
          commit(blocked, task.to_text());
          omit_log_.push_back({task.family, task.tau, x, blocked});
          return;
        }
      }
      throw FamilyExhausted(task.family, "no member of family " + std::to_string(task.family) +
                                             " can be blocked under " + task.tau.to_text());
    }
    case TaskKind::separate:
      throw PreconditionError("separate tasks run on a pair of chains");
  }
}

std::pair<ChainState, ChainState> ChainState::branch() const {
  ChainState left = *this;
  ChainState right = *this;
  left.rng_state_ = mix_seed(rng_state_, 1);
  right.rng_state_ = mix_seed(rng_state_, 2);
  return {std::move(left), std::move(right)};
}

bool is_proper(const BaseSpace& base, const std::vector<CylinderElement>& conditions) {
  return satisfy_conjunction(base, conditions).has_value();
}

// --- scheduler --------------------------------------------------------------

namespace {

// Deterministic enumeration of the subalgebra generated by diagonals,
// single-coordinate cylinders and the committed conditions: seed pool, then
// complements, then pairwise meets, round after round.
class DecidePool {
public:
  DecidePool(const BaseSpace& base, int coord_bound) : base_(&base) {
    for (int i = 0; i < coord_bound; ++i)
      for (int j = i + 1; j < coord_bound; ++j) pool_.push_back(base.diagonal(i, j));
    for (int c = 0; c < coord_bound; ++c)
      for (int v = 0; v < base.points(); ++v) pool_.push_back(base.coord_eq(c, v));
    round_end_ = pool_.size();
  }

  const CylinderElement* next() {
    while (true) {
      if (cursor_ < pool_.size()) return &pool_[cursor_++];
      if (!grow()) return nullptr;
    }
  }

private:
  bool grow() {
    // complements of the last round, then meets across it
    const std::size_t lo = round_start_, hi = round_end_;
    if (lo == hi) return false;
    std::size_t before = pool_.size();
    for (std::size_t i = lo; i < hi; ++i) push(base_->complement(pool_[i]));
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = i + 1; j < hi && pool_.size() < kPoolCap; ++j) {
        try {
          push(base_->meet(pool_[i], pool_[j]));
        } catch (const ResourceLimitError&) {
        }
      }
    round_start_ = hi;
    round_end_ = pool_.size();
    return pool_.size() > before;
  }

  void push(CylinderElement e) {
    if (e.is_zero() || e.is_one()) return;
    if (std::find(pool_.begin(), pool_.end(), e) != pool_.end()) return;
    pool_.push_back(std::move(e));
  }

  static constexpr std::size_t kPoolCap = 1u << 16;
  const BaseSpace* base_;
  std::vector<CylinderElement> pool_;
  std::size_t cursor_ = 0;
  std::size_t round_start_ = 0;
  std::size_t round_end_ = 0;
};

}  // namespace

ChainState run_schedule(const BaseSpace& base, const CylinderElement& seed,
                        const TypeFamily& families, long steps, const ScheduleOptions& opt) {
  if (seed.is_zero()) throw PreconditionError("run_schedule needs a nonzero seed");
  if (!families.empty()) families.validate(base);

  ChainState chain(base, seed, opt.rng_seed);
  chain.set_trace(opt.trace);

  DecidePool pool(base, opt.decide_coord_bound);

  std::vector<FiniteTransformation> taus;
  if (!families.empty()) taus = enumerate_transformations(opt.omit_tau_bound);
  std::size_t omit_cursor = 0;
  const std::size_t omit_total = taus.size() * families.families.size();

  std::size_t henkin_cond = 0;
  int henkin_k = 0;

  const int kinds = families.empty() ? 2 : 3;
  for (long i = 0; i < steps; ++i) {
    int slot = static_cast<int>(i % kinds);
    if (kinds == 3 && slot == 2 && omit_cursor >= omit_total) slot = 1;
    switch (slot) {
      case 0: {  // witness task over (condition, k) pairs
        int guard = 0;
        while (guard++ < 1000) {
          if (henkin_cond >= chain.conditions().size()) break;
          const CylinderElement x = chain.conditions()[henkin_cond];
          const int k = henkin_k;
          if (++henkin_k >= opt.henkin_index_bound) {
            henkin_k = 0;
            ++henkin_cond;
          }
          if (static_cast<int>(x.support().size()) + 1 > base.limits().max_support) continue;
          chain.step(Task::henkin(k, x));
          break;
        }
        break;
      }
      case 1: {  // decision task over the generated enumeration
        for (int attempt = 0; attempt < 64; ++attempt) {
          const CylinderElement* a = pool.next();
          if (a == nullptr) break;
          if (chain.decided().count(*a)) continue;
          chain.step(Task::decide(*a));
          break;
        }
        break;
      }
      default: {  // omit task over (family, tau) pairs
        const std::size_t t = omit_cursor / families.families.size();
        const int f = static_cast<int>(omit_cursor % families.families.size());
        ++omit_cursor;
        chain.step(Task::omit(f, taus[t]), &families);
        break;
      }
    }
  }
  return chain;
}

HenkinReplay verify_henkin_invariant(const ChainState& chain) {
  HenkinReplay replay;
  const BaseSpace& B = chain.base();
  for (const auto& rec : chain.henkin_log()) {
    ++replay.processed;
    if (!chain.contains(B.cylindrify(rec.coordinate, rec.element))) continue;
    ++replay.applicable;
    auto witnessed =
        B.substitute(FiniteTransformation::replace(rec.coordinate, rec.witness), rec.element);
    if (!chain.contains(witnessed)) ++replay.failures;
  }
  return replay;
}

OmitReplay verify_omit_invariant(const ChainState& chain, const TypeFamily& families) {
  OmitReplay replay;
  const BaseSpace& B = chain.base();
  for (const auto& rec : chain.omit_log()) {
    ++replay.pairs;
    const auto& fam = families.families.at(static_cast<std::size_t>(rec.family));
    bool blocked = false;
    for (const auto& x : fam)
      if (chain.contains(B.complement(B.substitute(rec.tau, x)))) {
        blocked = true;
        break;
      }
    if (!blocked) ++replay.failures;
  }
  return replay;
}

// --- twin game ---------------------------------------------------------------

SeparateOutcome separate_step(ChainState& first, ChainState& second,
                              const CensusSubalgebra& census) {
  SeparateOutcome out;
  const BaseSpace& B = second.base();

  // is the meet of the second chain one of the census atoms?
  for (const auto& atom : census.atoms()) {
    bool above_all = true;
    for (const auto& cond : second.conditions())
      if (!B.leq(atom, cond)) {
        above_all = false;
        break;
      }
    if (above_all && second.contains(atom)) {
      out.principal = true;
      return out;
    }
  }

  int c = 0;
  while (first.support_coords().count(c) || second.support_coords().count(c) ||
         first.used_witnesses().count(c) || second.used_witnesses().count(c))
    ++c;
  auto d = B.coord_eq(c, 0);
  second.commit(d, "separate+");
  first.commit(B.complement(d), "separate-");
  out.split = true;
  out.split_element = d;
  return out;
}

long count_disagreements(ChainState& a, ChainState& b,
                         const std::vector<CylinderElement>& probes) {
  long count = 0;
  for (const auto& x : probes) {
    Membership ma = a.membership(x);
    Membership mb = b.membership(x);
    if ((ma == Membership::in && mb == Membership::out) ||
        (ma == Membership::out && mb == Membership::in))
      ++count;
  }
  return count;
}

TwinGameResult twin_game(const BaseSpace& base, const CensusSubalgebra& census, long steps,
                         const TwinGameOptions& opt) {
  ChainState t(base, base.one(), mix_seed(opt.rng_seed, 0x74));
  ChainState s(base, base.one(), mix_seed(opt.rng_seed, 0x73));
  t.set_trace(opt.trace);
  s.set_trace(opt.trace);

  DecidePool pool(base, opt.decide_coord_bound);
  std::vector<CylinderElement> decided_probes;

  std::size_t henkin_cond_t = 0, henkin_cond_s = 0;
  int henkin_k_t = 0, henkin_k_s = 0;
  auto henkin_step = [&](ChainState& chain, std::size_t& cond, int& k) {
    int guard = 0;
    while (guard++ < 1000) {
      if (cond >= chain.conditions().size()) return;
      const CylinderElement x = chain.conditions()[cond];
      const int kk = k;
      if (++k >= opt.henkin_index_bound) {
        k = 0;
        ++cond;
      }
      if (static_cast<int>(x.support().size()) + 1 > base.limits().max_support) continue;
      chain.step(Task::henkin(kk, x));
      return;
    }
  };

  TwinGameResult result{std::move(t), std::move(s)};
  for (long i = 0; i < steps; ++i) {
    switch (i % 4) {
      case 0: {
        ++result.separations;
        auto sep = separate_step(result.t, result.s, census);
        if (sep.split) {
          ++result.splits;
          result.split_elements.push_back(sep.split_element);
        }
        break;
      }
      case 1:
        henkin_step(result.t, henkin_cond_t, henkin_k_t);
        break;
      case 2:
        henkin_step(result.s, henkin_cond_s, henkin_k_s);
        break;
      default: {
        for (int attempt = 0; attempt < 64; ++attempt) {
          const CylinderElement* a = pool.next();
          if (a == nullptr) break;
          if (result.t.decided().count(*a) && result.s.decided().count(*a)) continue;
          result.t.step(Task::decide(*a));
          result.s.step(Task::decide(*a));
          decided_probes.push_back(*a);
          break;
        }
        break;
      }
    }
  }

  std::vector<CylinderElement> probes = result.split_elements;
  probes.insert(probes.end(), decided_probes.begin(), decided_probes.end());
  result.disagreements = count_disagreements(result.t, result.s, probes);

  for (const auto& atom : census.atoms()) {
    bool below_both = true;
    for (const auto& cond : result.t.conditions())
      if (!base.leq(atom, cond)) {
        below_both = false;
        break;
      }
    if (below_both)
      for (const auto& cond : result.s.conditions())
        if (!base.leq(atom, cond)) {
          below_both = false;
          break;
        }
    if (below_both) result.common_atoms.push_back(atom);
  }
  result.principality_ok = result.common_atoms.size() <= 1;
  return result;
}

std::vector<ChainState> branch_tree(const BaseSpace& base, const CensusSubalgebra& census,
                                    int depth, const TwinGameOptions& opt) {
  std::vector<ChainState> leaves;
  leaves.emplace_back(base, base.one(), opt.rng_seed);
  leaves.back().set_trace(opt.trace);
  for (int level = 0; level < depth; ++level) {
    std::vector<ChainState> next;
    for (auto& leaf : leaves) {
      auto [l, r] = leaf.branch();
      next.push_back(std::move(l));
      next.push_back(std::move(r));
    }
    leaves = std::move(next);
  }
  for (std::size_t i = 0; i < leaves.size(); ++i)
    for (std::size_t j = i + 1; j < leaves.size(); ++j)
      separate_step(leaves[i], leaves[j], census);
  return leaves;
}

}  // namespace tca
