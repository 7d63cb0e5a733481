#include "tca/axioms.hpp"

#include <algorithm>

#include "tca/errors.hpp"

namespace tca {

namespace {

using Elems = std::span<const CylinderElement>;
using Idxs = std::span<const int>;

CylinderElement biimp(const BaseSpace& B, const CylinderElement& p, const CylinderElement& q) {
  return B.meet(B.join(B.complement(p), q), B.join(B.complement(q), p));
}

bool coord_in_support(const CylinderElement& x, int c) {
  return std::binary_search(x.support().begin(), x.support().end(), c);
}

}  // namespace

std::string Counterexample::describe() const {
  std::string s = "law=" + law_id;
  if (!indices.empty()) {
    s += " idx=[";
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(indices[i]);
    }
    s += ']';
  }
  for (std::size_t i = 0; i < elements.size(); ++i)
    s += " x" + std::to_string(i) + "=" + elements[i].to_text();
  s += " lhs=" + lhs_value.to_text() + " rhs=" + rhs_value.to_text();
  if (!note.empty()) s += " (" + note + ")";
  return s;
}

bool AxiomReport::all_hold() const {
  for (const auto& v : verdicts)
    if (!v.holds) return false;
  return true;
}

const LawVerdict* AxiomReport::find(const std::string& id) const {
  for (const auto& v : verdicts)
    if (v.law_id == id) return &v;
  return nullptr;
}

namespace {

// Evaluates one instance; returns false on a genuine violation.
bool instance_holds(const BaseSpace& base, const Law& law, Elems xs, Idxs is,
                    CylinderElement& lhs_out, CylinderElement& rhs_out) {
  lhs_out = law.lhs(base, xs, is);
  rhs_out = law.rhs(base, xs, is);
  if (law.inequality) return base.leq(lhs_out, rhs_out);
  return lhs_out == rhs_out;
}

void record_failure(LawVerdict& verdict, const Law& law, Elems xs, Idxs is,
                    const CylinderElement& lhs, const CylinderElement& rhs) {
  if (!verdict.holds) return;  // keep the first counterexample only
  verdict.holds = false;
  Counterexample ce;
  ce.law_id = law.id;
  ce.elements.assign(xs.begin(), xs.end());
  ce.indices.assign(is.begin(), is.end());
  ce.lhs_value = lhs;
  ce.rhs_value = rhs;
  ce.note = law.note;
  verdict.counterexample = std::move(ce);
}

}  // namespace

AxiomReport run_laws(const BaseSpace& base, const std::vector<Law>& laws, int index_bound,
                     const std::vector<CylinderElement>& sample) {
  AxiomReport report;
  for (const Law& law : laws) {
    LawVerdict verdict;
    verdict.law_id = law.id;
    verdict.note = law.note;

    std::vector<int> is(static_cast<std::size_t>(law.index_arity), 0);
    std::vector<std::size_t> xi(static_cast<std::size_t>(law.element_arity), 0);
    const std::size_t sample_size = sample.size();
    bool any_elements = law.element_arity == 0 || sample_size > 0;

    auto next_indices = [&]() {
      for (int d = 0; d < law.index_arity; ++d) {
        if (++is[static_cast<std::size_t>(d)] < index_bound) return true;
        is[static_cast<std::size_t>(d)] = 0;
      }
      return false;
    };
    auto next_elements = [&]() {
      for (int d = 0; d < law.element_arity; ++d) {
        if (++xi[static_cast<std::size_t>(d)] < sample_size) return true;
        xi[static_cast<std::size_t>(d)] = 0;
      }
      return false;
    };

    if (any_elements) {
      std::vector<CylinderElement> xs(static_cast<std::size_t>(law.element_arity));
      bool more_idx = true;
      while (more_idx) {
        std::fill(xi.begin(), xi.end(), 0);
        bool more_el = true;
        while (more_el) {
          for (int d = 0; d < law.element_arity; ++d)
            xs[static_cast<std::size_t>(d)] = sample[xi[static_cast<std::size_t>(d)]];
          if (!law.guard || law.guard(xs, is)) {
            try {
              CylinderElement lhs, rhs;
              ++verdict.instances;
              if (!instance_holds(base, law, xs, is, lhs, rhs))
                record_failure(verdict, law, xs, is, lhs, rhs);
            } catch (const ResourceLimitError&) {
              ++verdict.resource_skips;
            }
          }
          more_el = law.element_arity > 0 && next_elements();
          if (law.element_arity == 0) break;
        }
        more_idx = law.index_arity > 0 && next_indices();
        if (law.index_arity == 0) break;
      }
    }
    report.verdicts.push_back(std::move(verdict));
  }
  return report;
}

AxiomReport run_laws_random(const BaseSpace& base, const std::vector<Law>& laws, int index_bound,
                            long instances, std::uint64_t seed) {
  AxiomReport report;
  for (const Law& law : laws) {
    LawVerdict v;
    v.law_id = law.id;
    v.note = law.note;
    report.verdicts.push_back(std::move(v));
  }
  Rng rng(seed);
  const int window = index_bound + 1;
  for (long t = 0; t < instances; ++t) {
    std::vector<CylinderElement> xs;
    for (int j = 0; j < 3; ++j) xs.push_back(random_element(base, window, rng));
    std::vector<int> is;
    for (int j = 0; j < 3; ++j) is.push_back(rng.range(0, index_bound));

    for (std::size_t li = 0; li < laws.size(); ++li) {
      const Law& law = laws[li];
      LawVerdict& verdict = report.verdicts[li];
      Elems exs(xs.data(), static_cast<std::size_t>(law.element_arity));
      Idxs eis(is.data(), static_cast<std::size_t>(law.index_arity));
      if (law.guard && !law.guard(exs, eis)) continue;
      try {
        CylinderElement lhs, rhs;
        ++verdict.instances;
        if (!instance_holds(base, law, exs, eis, lhs, rhs))
          record_failure(verdict, law, exs, eis, lhs, rhs);
      } catch (const ResourceLimitError&) {
        ++verdict.resource_skips;
      }
    }
  }
  return report;
}

bool reevaluate_counterexample(const BaseSpace& base, const std::vector<Law>& laws,
                               const Counterexample& ce) {
  for (const Law& law : laws) {
    if (law.id != ce.law_id) continue;
    CylinderElement lhs, rhs;
    return !instance_holds(base, law, ce.elements, ce.indices, lhs, rhs);
  }
  return false;
}

CylinderElement random_element(const BaseSpace& base, int support_window, Rng& rng) {
  std::vector<int> support;
  for (int c = 0; c < support_window; ++c)
    if (rng.chance(1, 2)) support.push_back(c);
  std::size_t total = 1;
  for (std::size_t i = 0; i < support.size(); ++i) total *= static_cast<std::size_t>(base.points());
  std::vector<bool> rows(total, false);
  for (std::size_t i = 0; i < total; ++i) rows[i] = rng.chance(1, 2);
  return CylinderElement::canonical(base.points(), std::move(support), std::move(rows));
}

std::vector<Law> ca_laws() {
  std::vector<Law> laws;
  auto add = [&](Law l) { laws.push_back(std::move(l)); };

  add({.id = "bool.join-comm", .element_arity = 2,
       .lhs = [](const BaseSpace& B, Elems x, Idxs) { return B.join(x[0], x[1]); },
       .rhs = [](const BaseSpace& B, Elems x, Idxs) { return B.join(x[1], x[0]); }});
  add({.id = "bool.meet-comm", .element_arity = 2,
       .lhs = [](const BaseSpace& B, Elems x, Idxs) { return B.meet(x[0], x[1]); },
       .rhs = [](const BaseSpace& B, Elems x, Idxs) { return B.meet(x[1], x[0]); }});
  add({.id = "bool.join-assoc", .element_arity = 3,
       .lhs = [](const BaseSpace& B, Elems x, Idxs) { return B.join(x[0], B.join(x[1], x[2])); },
       .rhs = [](const BaseSpace& B, Elems x, Idxs) { return B.join(B.join(x[0], x[1]), x[2]); }});
  add({.id = "bool.meet-assoc", .element_arity = 3,
       .lhs = [](const BaseSpace& B, Elems x, Idxs) { return B.meet(x[0], B.meet(x[1], x[2])); },
       .rhs = [](const BaseSpace& B, Elems x, Idxs) { return B.meet(B.meet(x[0], x[1]), x[2]); }});
  add({.id = "bool.absorb-join", .element_arity = 2,
       .lhs = [](const BaseSpace& B, Elems x, Idxs) { return B.join(x[0], B.meet(x[0], x[1])); },
       .rhs = [](const BaseSpace&, Elems x, Idxs) { return x[0]; }});
  add({.id = "bool.absorb-meet", .element_arity = 2,
       .lhs = [](const BaseSpace& B, Elems x, Idxs) { return B.meet(x[0], B.join(x[0], x[1])); },
       .rhs = [](const BaseSpace&, Elems x, Idxs) { return x[0]; }});
  add({.id = "bool.distrib", .element_arity = 3,
       .lhs = [](const BaseSpace& B, Elems x, Idxs) { return B.meet(x[0], B.join(x[1], x[2])); },
       .rhs = [](const BaseSpace& B, Elems x, Idxs) {
         return B.join(B.meet(x[0], x[1]), B.meet(x[0], x[2]));
       }});
  add({.id = "bool.distrib-dual", .element_arity = 3,
       .lhs = [](const BaseSpace& B, Elems x, Idxs) { return B.join(x[0], B.meet(x[1], x[2])); },
       .rhs = [](const BaseSpace& B, Elems x, Idxs) {
         return B.meet(B.join(x[0], x[1]), B.join(x[0], x[2]));
       }});
  add({.id = "bool.compl-join", .element_arity = 1,
       .lhs = [](const BaseSpace& B, Elems x, Idxs) { return B.join(x[0], B.complement(x[0])); },
       .rhs = [](const BaseSpace& B, Elems, Idxs) { return B.one(); }});
  add({.id = "bool.compl-meet", .element_arity = 1,
       .lhs = [](const BaseSpace& B, Elems x, Idxs) { return B.meet(x[0], B.complement(x[0])); },
       .rhs = [](const BaseSpace& B, Elems, Idxs) { return B.zero(); }});

  add({.id = "cyl.zero", .index_arity = 1,
       .lhs = [](const BaseSpace& B, Elems, Idxs i) { return B.cylindrify(i[0], B.zero()); },
       .rhs = [](const BaseSpace& B, Elems, Idxs) { return B.zero(); }});
  add({.id = "cyl.increasing", .element_arity = 1, .index_arity = 1, .inequality = true,
       .lhs = [](const BaseSpace&, Elems x, Idxs) { return x[0]; },
       .rhs = [](const BaseSpace& B, Elems x, Idxs i) { return B.cylindrify(i[0], x[0]); }});
  add({.id = "cyl.meet", .element_arity = 2, .index_arity = 1,
       .lhs = [](const BaseSpace& B, Elems x, Idxs i) {
         return B.cylindrify(i[0], B.meet(x[0], B.cylindrify(i[0], x[1])));
       },
       .rhs = [](const BaseSpace& B, Elems x, Idxs i) {
         return B.meet(B.cylindrify(i[0], x[0]), B.cylindrify(i[0], x[1]));
       }});
  add({.id = "cyl.commute", .element_arity = 1, .index_arity = 2,
       .lhs = [](const BaseSpace& B, Elems x, Idxs i) {
         return B.cylindrify(i[0], B.cylindrify(i[1], x[0]));
       },
       .rhs = [](const BaseSpace& B, Elems x, Idxs i) {
         return B.cylindrify(i[1], B.cylindrify(i[0], x[0]));
       }});

  add({.id = "diag.identity", .index_arity = 1,
       .lhs = [](const BaseSpace& B, Elems, Idxs i) { return B.diagonal(i[0], i[0]); },
       .rhs = [](const BaseSpace& B, Elems, Idxs) { return B.one(); }});
  add({.id = "diag.compose", .index_arity = 3,
       .guard = [](Elems, Idxs i) { return i[2] != i[0] && i[2] != i[1]; },
       .lhs = [](const BaseSpace& B, Elems, Idxs i) { return B.diagonal(i[0], i[1]); },
       .rhs = [](const BaseSpace& B, Elems, Idxs i) {
         return B.cylindrify(i[2], B.meet(B.diagonal(i[0], i[2]), B.diagonal(i[1], i[2])));
       }});
  add({.id = "diag.split", .element_arity = 1, .index_arity = 2,
       .guard = [](Elems, Idxs i) { return i[0] != i[1]; },
       .lhs = [](const BaseSpace& B, Elems x, Idxs i) {
         auto d = B.diagonal(i[0], i[1]);
         return B.meet(B.cylindrify(i[0], B.meet(d, x[0])),
                       B.cylindrify(i[0], B.meet(d, B.complement(x[0]))));
       },
       .rhs = [](const BaseSpace& B, Elems, Idxs) { return B.zero(); }});
  return laws;
}

std::vector<Law> interior_laws(InteriorReading reading) {
  const bool corrected = reading == InteriorReading::corrected;
  std::vector<Law> laws;
  auto add = [&](Law l) { laws.push_back(std::move(l)); };

  add({.id = "int.congruence", .element_arity = 2, .index_arity = 1, .inequality = true,
       .note = "universal quantifier read as the dual projection",
       .lhs = [](const BaseSpace& B, Elems x, Idxs i) {
         return B.dual_cylindrify(i[0], biimp(B, x[0], x[1]));
       },
       .rhs = [](const BaseSpace& B, Elems x, Idxs i) {
         return B.dual_cylindrify(i[0], biimp(B, B.interior(i[0], x[0]), B.interior(i[0], x[1])));
       }});
  add({.id = "int.deflation", .element_arity = 1, .index_arity = 1, .inequality = true,
       .lhs = [](const BaseSpace& B, Elems x, Idxs i) { return B.interior(i[0], x[0]); },
       .rhs = [](const BaseSpace&, Elems x, Idxs) { return x[0]; }});
  if (corrected) {
    add({.id = "int.multiplicative", .element_arity = 2, .index_arity = 1,
         .lhs = [](const BaseSpace& B, Elems x, Idxs i) {
           return B.meet(B.interior(i[0], x[0]), B.interior(i[0], x[1]));
         },
         .rhs = [](const BaseSpace& B, Elems x, Idxs i) {
           return B.interior(i[0], B.meet(x[0], x[1]));
         }});
    add({.id = "int.idempotent", .element_arity = 1, .index_arity = 1, .inequality = true,
         .lhs = [](const BaseSpace& B, Elems x, Idxs i) { return B.interior(i[0], x[0]); },
         .rhs = [](const BaseSpace& B, Elems x, Idxs i) {
           return B.interior(i[0], B.interior(i[0], x[0]));
         }});
  } else {
    add({.id = "int.multiplicative", .element_arity = 2, .index_arity = 1,
         .note = "as printed: the left side repeats the first operand",
         .lhs = [](const BaseSpace& B, Elems x, Idxs i) {
           return B.meet(B.interior(i[0], x[0]), B.interior(i[0], x[0]));
         },
         .rhs = [](const BaseSpace& B, Elems x, Idxs i) {
           return B.interior(i[0], B.meet(x[0], x[1]));
         }});
    add({.id = "int.idempotent", .element_arity = 1, .index_arity = 1, .inequality = true,
         .note = "as printed: the bare element on the left",
         .lhs = [](const BaseSpace&, Elems x, Idxs) { return x[0]; },
         .rhs = [](const BaseSpace& B, Elems x, Idxs i) {
           return B.interior(i[0], B.interior(i[0], x[0]));
         }});
  }
  add({.id = "int.unit", .index_arity = 1,
       .lhs = [](const BaseSpace& B, Elems, Idxs i) { return B.interior(i[0], B.one()); },
       .rhs = [](const BaseSpace& B, Elems, Idxs) { return B.one(); }});
  add({.id = "int.substitution", .element_arity = 1, .index_arity = 2,
       .lhs = [](const BaseSpace& B, Elems x, Idxs i) {
         return B.substitute(FiniteTransformation::replace(i[1], i[0]), B.interior(i[0], x[0]));
       },
       .rhs = [](const BaseSpace& B, Elems x, Idxs i) {
         return B.interior(i[1],
                           B.substitute(FiniteTransformation::replace(i[1], i[0]), x[0]));
       }});
  // diagnostic variants, reported per topology: the same law restricted to a
  // target index off the element's support, and with the replacement
  // direction swapped under the same restriction
  add({.id = "int.substitution.fresh", .element_arity = 1, .index_arity = 2,
       .guard = [](Elems x, Idxs i) { return i[0] != i[1] && !coord_in_support(x[0], i[1]); },
       .lhs = [](const BaseSpace& B, Elems x, Idxs i) {
         return B.substitute(FiniteTransformation::replace(i[1], i[0]), B.interior(i[0], x[0]));
       },
       .rhs = [](const BaseSpace& B, Elems x, Idxs i) {
         return B.interior(i[1],
                           B.substitute(FiniteTransformation::replace(i[1], i[0]), x[0]));
       }});
  add({.id = "int.substitution.swapped.fresh", .element_arity = 1, .index_arity = 2,
       .guard = [](Elems x, Idxs i) { return i[0] != i[1] && !coord_in_support(x[0], i[1]); },
       .lhs = [](const BaseSpace& B, Elems x, Idxs i) {
         return B.substitute(FiniteTransformation::replace(i[0], i[1]), B.interior(i[0], x[0]));
       },
       .rhs = [](const BaseSpace& B, Elems x, Idxs i) {
         return B.interior(i[1],
                           B.substitute(FiniteTransformation::replace(i[0], i[1]), x[0]));
       }});
  return laws;
}

AxiomReport check_ca_axioms(const BaseSpace& base, int index_bound,
                            const std::vector<CylinderElement>& sample) {
  return run_laws(base, ca_laws(), index_bound, sample);
}

AxiomReport check_tca_axioms(const BaseSpace& base, int index_bound,
                             const std::vector<CylinderElement>& sample,
                             InteriorReading reading) {
  return run_laws(base, interior_laws(reading), index_bound, sample);
}

AxiomReport check_substitution_laws(const BaseSpace& base,
                                    const std::vector<CylinderElement>& sample,
                                    const std::vector<FiniteTransformation>& transformations) {
  AxiomReport report;
  report.verdicts.resize(6);
  report.verdicts[0].law_id = "subst.identity";
  report.verdicts[1].law_id = "subst.meet";
  report.verdicts[2].law_id = "subst.join";
  report.verdicts[3].law_id = "subst.complement";
  report.verdicts[4].law_id = "subst.compose";
  report.verdicts[5].law_id = "subst.single";

  auto fail = [&](std::size_t vi, const CylinderElement& x, const std::string& note,
                  const CylinderElement& lhs, const CylinderElement& rhs) {
    LawVerdict& v = report.verdicts[vi];
    if (!v.holds) return;
    v.holds = false;
    Counterexample ce;
    ce.law_id = v.law_id;
    ce.elements = {x};
    ce.lhs_value = lhs;
    ce.rhs_value = rhs;
    ce.note = note;
    v.counterexample = std::move(ce);
  };

  const FiniteTransformation id;
  for (const auto& x : sample) {
    ++report.verdicts[0].instances;
    auto lhs = base.substitute(id, x);
    if (lhs != x) fail(0, x, "identity substitution", lhs, x);
  }

  for (const auto& tau : transformations) {
    for (std::size_t a = 0; a < sample.size(); ++a) {
      for (std::size_t b = a; b < sample.size(); ++b) {
        try {
          ++report.verdicts[1].instances;
          auto lhs = base.substitute(tau, base.meet(sample[a], sample[b]));
          auto rhs = base.meet(base.substitute(tau, sample[a]), base.substitute(tau, sample[b]));
          if (lhs != rhs) fail(1, sample[a], "tau=" + tau.to_text(), lhs, rhs);
          ++report.verdicts[2].instances;
          auto lj = base.substitute(tau, base.join(sample[a], sample[b]));
          auto rj = base.join(base.substitute(tau, sample[a]), base.substitute(tau, sample[b]));
          if (lj != rj) fail(2, sample[a], "tau=" + tau.to_text(), lj, rj);
        } catch (const ResourceLimitError&) {
          ++report.verdicts[1].resource_skips;
        }
      }
      ++report.verdicts[3].instances;
      auto lc = base.substitute(tau, base.complement(sample[a]));
      auto rc = base.complement(base.substitute(tau, sample[a]));
      if (lc != rc) fail(3, sample[a], "tau=" + tau.to_text(), lc, rc);
    }
  }

  for (const auto& tau : transformations)
    for (const auto& sigma : transformations)
      for (const auto& x : sample) {
        ++report.verdicts[4].instances;
        auto lhs = base.substitute(compose(tau, sigma), x);
        auto rhs = base.substitute(tau, base.substitute(sigma, x));
        if (lhs != rhs)
          fail(4, x, "tau=" + tau.to_text() + " sigma=" + sigma.to_text(), lhs, rhs);
      }

  // single replacement against its cylinder/diagonal term, off the diagonal
  int single_bound = 3;
  for (int i = 0; i < single_bound; ++i)
    for (int j = 0; j < single_bound; ++j) {
      if (i == j) continue;
      for (const auto& x : sample) {
        try {
          ++report.verdicts[5].instances;
          auto lhs = base.substitute(FiniteTransformation::replace(i, j), x);
          auto rhs = base.cylindrify(i, base.meet(base.diagonal(i, j), x));
          if (lhs != rhs)
            fail(5, x, "i=" + std::to_string(i) + " j=" + std::to_string(j), lhs, rhs);
        } catch (const ResourceLimitError&) {
          ++report.verdicts[5].resource_skips;
        }
      }
    }
  return report;
}

}  // namespace tca
