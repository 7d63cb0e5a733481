#include "tca/interpolation.hpp"

#include <algorithm>

#include "tca/conjunction.hpp"
#include "tca/errors.hpp"

namespace tca {

void GeneratedSubalgebra::push(CylinderElement e, std::string term) {
  if (elements_.size() >= caps_.max_elements) {
    truncated_ = true;
    return;
  }
  if (std::find(elements_.begin(), elements_.end(), e) != elements_.end()) return;
  elements_.push_back(std::move(e));
  terms_.push_back(std::move(term));
}

GeneratedSubalgebra::GeneratedSubalgebra(const BaseSpace& base,
                                         std::vector<CylinderElement> generators,
                                         ClosureCaps caps)
    : caps_(caps) {
  push(base.zero(), "0");
  push(base.one(), "1");
  for (int i = 0; i < caps_.support_cap; ++i)
    for (int j = i + 1; j < caps_.support_cap; ++j)
      push(base.diagonal(i, j), "d" + std::to_string(i) + std::to_string(j));
  for (std::size_t g = 0; g < generators.size(); ++g)
    push(generators[g], "g" + std::to_string(g));

  auto guarded = [&](auto&& fn, const std::string& term) {
    try {
      push(fn(), term);
    } catch (const ResourceLimitError& e) {
      ++resource_skips_;
      if (resource_note_.empty()) resource_note_ = term + ": " + e.what();
    }
  };

  for (int round = 0; round < caps_.depth_cap && !truncated_; ++round) {
    const std::size_t frozen = elements_.size();
    for (std::size_t t = 0; t < frozen; ++t) {
      const auto ref = [&](std::size_t k) { return "t" + std::to_string(k); };
      guarded([&] { return base.complement(elements_[t]); }, "-" + ref(t));
      for (int i = 0; i < caps_.support_cap; ++i) {
        guarded([&] { return base.cylindrify(i, elements_[t]); },
                "c" + std::to_string(i) + "(" + ref(t) + ")");
        guarded([&] { return base.interior(i, elements_[t]); },
                "I" + std::to_string(i) + "(" + ref(t) + ")");
        for (int j = 0; j < caps_.support_cap; ++j) {
          if (i == j) continue;
          guarded(
              [&] {
                return base.substitute(FiniteTransformation::replace(i, j), elements_[t]);
              },
              "s[" + std::to_string(i) + ">" + std::to_string(j) + "](" + ref(t) + ")");
        }
      }
    }
    for (std::size_t i = 0; i < frozen && !truncated_; ++i)
      for (std::size_t j = i + 1; j < frozen && !truncated_; ++j)
        guarded([&] { return base.meet(elements_[i], elements_[j]); },
                "(t" + std::to_string(i) + "*t" + std::to_string(j) + ")");
    if (elements_.size() == frozen) break;  // fixed point
  }
}

int GeneratedSubalgebra::find(const CylinderElement& x) const {
  auto it = std::find(elements_.begin(), elements_.end(), x);
  return it == elements_.end() ? -1 : static_cast<int>(it - elements_.begin());
}

GeneratedSubalgebra sg_closure(const BaseSpace& base,
                               const std::vector<CylinderElement>& generators,
                               const ClosureCaps& caps) {
  return GeneratedSubalgebra(base, generators, caps);
}

InterpolationInstance make_instance(const BaseSpace& base, std::vector<CylinderElement> x1,
                                    std::vector<CylinderElement> x2, CylinderElement a,
                                    CylinderElement c) {
  if (!base.leq(a, c)) throw PreconditionError("instance needs a <= c");
  return InterpolationInstance{std::move(x1), std::move(x2), std::move(a), std::move(c)};
}

std::vector<CylinderElement> common_generators(const InterpolationInstance& inst) {
  std::vector<CylinderElement> out;
  for (const auto& g : inst.x1)
    if (std::find(inst.x2.begin(), inst.x2.end(), g) != inst.x2.end() &&
        std::find(out.begin(), out.end(), g) == out.end())
      out.push_back(g);
  return out;
}

InterpolantResult find_interpolant(const BaseSpace& base, const InterpolationInstance& inst,
                                   const ClosureCaps& caps) {
  auto sg = sg_closure(base, common_generators(inst), caps);
  InterpolantResult res;
  res.caps = caps;
  res.truncated = sg.truncated();
  for (std::size_t t = 0; t < sg.elements().size(); ++t) {
    const auto& b = sg.elements()[t];
    if (base.leq(inst.a, b) && base.leq(b, inst.c)) {
      res.found = true;
      res.interpolant = b;
      res.term = sg.term_of(t);
      return res;
    }
  }
  return res;
}

std::vector<CylinderElement> interpolant_candidates(const BaseSpace& base,
                                                    const InterpolationInstance& inst,
                                                    const ClosureCaps& caps) {
  auto sg = sg_closure(base, common_generators(inst), caps);
  std::vector<CylinderElement> out;
  for (const auto& b : sg.elements())
    if (base.leq(inst.a, b) && base.leq(b, inst.c)) out.push_back(b);
  return out;
}

namespace {

// Members of the common subalgebra forced by the prefix of a trace:
// everything the conjunction of the prefix lies below.
std::vector<int> dominated_members(const BaseSpace& base,
                                   const std::vector<CylinderElement>& prefix,
                                   const GeneratedSubalgebra& sg) {
  ConjunctionEngine engine(base);
  for (const auto& y : prefix)
    if (!engine.add(y)) {
      // prefix already inconsistent: it lies below everything
      std::vector<int> all(sg.elements().size());
      for (std::size_t t = 0; t < all.size(); ++t) all[t] = static_cast<int>(t);
      return all;
    }
  std::vector<int> out;
  for (std::size_t t = 0; t < sg.elements().size(); ++t)
    if (engine.implies(sg.elements()[t])) out.push_back(static_cast<int>(t));
  return out;
}

}  // namespace

SeparatingFiltersReport build_separating_filters(const BaseSpace& base,
                                                 const InterpolationInstance& inst, int steps,
                                                 const ClosureCaps& caps) {
  SeparatingFiltersReport report;
  auto sg1 = sg_closure(base, inst.x1, caps);
  auto sg2 = sg_closure(base, inst.x2, caps);
  auto sg0 = sg_closure(base, common_generators(inst), caps);
  report.common_size = static_cast<long>(sg0.elements().size());

  // interleaved fresh witnesses above every coordinate in sight
  int fresh = 0;
  auto raise = [&fresh](const CylinderElement& e) {
    if (!e.support().empty()) fresh = std::max(fresh, e.support().back() + 1);
  };
  for (const auto& e : sg1.elements()) raise(e);
  for (const auto& e : sg2.elements()) raise(e);
  raise(inst.a);
  raise(inst.c);

  report.trace_a = {inst.a};
  report.trace_c = {base.complement(inst.c)};
  auto extend_trace = [&](std::vector<CylinderElement>& trace, const GeneratedSubalgebra& sg,
                          int& witness) {
    long made = 0;
    for (std::size_t t = 0; t < sg.elements().size() && made < steps; ++t) {
      for (int k = 0; k < caps.support_cap && made < steps; ++k) {
        const auto& x = sg.elements()[t];
        try {
          auto w = base.join(base.complement(base.cylindrify(k, x)),
                             base.substitute(FiniteTransformation::replace(k, witness), x));
          trace.push_back(std::move(w));
          witness += 2;
          ++made;
        } catch (const ResourceLimitError&) {
        }
      }
    }
  };
  int witness_a = fresh;      // even offsets
  int witness_c = fresh + 1;  // odd offsets, interleaved
  extend_trace(report.trace_a, sg1, witness_a);
  extend_trace(report.trace_c, sg2, witness_c);

  // properness of the joint filter on the common subalgebra: every pair of
  // members dominated by the two prefixes must have a nonzero meet
  const int max_a = static_cast<int>(report.trace_a.size());
  const int max_c = static_cast<int>(report.trace_c.size());
  std::vector<std::vector<int>> dom_a(static_cast<std::size_t>(max_a) + 1);
  std::vector<std::vector<int>> dom_c(static_cast<std::size_t>(max_c) + 1);
  for (int n = 1; n <= max_a; ++n)
    dom_a[static_cast<std::size_t>(n)] = dominated_members(
        base, {report.trace_a.begin(), report.trace_a.begin() + n}, sg0);
  for (int m = 1; m <= max_c; ++m)
    dom_c[static_cast<std::size_t>(m)] = dominated_members(
        base, {report.trace_c.begin(), report.trace_c.begin() + m}, sg0);

  for (int total = 2; total <= max_a + max_c && report.proper; ++total)
    for (int n = std::max(1, total - max_c); n <= std::min(total - 1, max_a) && report.proper;
         ++n) {
      const int m = total - n;
      for (int b0 : dom_a[static_cast<std::size_t>(n)]) {
        for (int b1 : dom_c[static_cast<std::size_t>(m)]) {
          if (base.meet(sg0.elements()[static_cast<std::size_t>(b0)],
                        sg0.elements()[static_cast<std::size_t>(b1)])
                  .is_zero()) {
            report.proper = false;
            report.violation_prefix_a = n;
            report.violation_prefix_c = m;
            report.violating_b0 = sg0.elements()[static_cast<std::size_t>(b0)];
            report.violating_b1 = sg0.elements()[static_cast<std::size_t>(b1)];
            break;
          }
        }
        if (!report.proper) break;
      }
    }

  // generators of the joint filter inside the common subalgebra
  for (int t : dom_a[static_cast<std::size_t>(max_a)])
    report.h_members.push_back(sg0.elements()[static_cast<std::size_t>(t)]);
  for (int t : dom_c[static_cast<std::size_t>(max_c)]) {
    const auto& e = sg0.elements()[static_cast<std::size_t>(t)];
    if (std::find(report.h_members.begin(), report.h_members.end(), e) ==
        report.h_members.end())
      report.h_members.push_back(e);
  }

  if (report.proper) {
    // ultrafilter stage: chains over each side extending the traces and the
    // common filter, with the witness condition replayed on the recorded
    // pairs and the two restrictions compared on the common subalgebra
    report.built_extensions = true;
    auto build_side = [&](const std::vector<CylinderElement>& trace) {
      ChainState chain(base, trace.front());
      for (std::size_t t = 1; t < trace.size(); ++t)
        chain.commit(trace[t], "separating trace");
      for (const auto& h : report.h_members)
        if (chain.consistent_with(h)) chain.commit(h, "common filter");
      return chain;
    };
    ChainState f1 = build_side(report.trace_a);
    ChainState f2 = build_side(report.trace_c);

    auto replay = [&](ChainState& chain, const GeneratedSubalgebra& sg, int fresh_base) {
      long failures = 0;
      long made = 0;
      int witness = fresh_base;
      for (std::size_t t = 0; t < sg.elements().size() && made < steps; ++t)
        for (int k = 0; k < caps.support_cap && made < steps; ++k) {
          const auto& x = sg.elements()[t];
          ++made;
          if (!chain.contains(base.cylindrify(k, x))) continue;
          auto moved = base.substitute(FiniteTransformation::replace(k, witness), x);
          witness += 2;
          if (!chain.contains(moved)) ++failures;
        }
      return failures;
    };
    report.f1_witness_failures = replay(f1, sg1, fresh);
    report.f2_witness_failures = replay(f2, sg2, fresh + 1);

    for (const auto& b : sg0.elements()) {
      bool m1 = f1.membership(b, true) == Membership::in;
      bool m2 = f2.membership(b, true) == Membership::in;
      if (m1 == m2)
        ++report.common_agreements;
      else
        ++report.common_disagreements;
    }
  }

  report.footer =
      "bounded search over concrete algebras: a properness failure exhibits an interpolant "
      "lead, a proper run is desk-scale evidence only";
  return report;
}

}  // namespace tca
