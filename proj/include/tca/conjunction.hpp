#ifndef TCA_CONJUNCTION_HPP
#define TCA_CONJUNCTION_HPP

#include <map>
#include <optional>
#include <vector>

#include "tca/element.hpp"

namespace tca {

/// A point of the meet of finitely many cylinder elements, given as values
/// on the union of their supports (all other coordinates are free).
using Assignment = std::map<int, int>;

/// Incremental satisfiability engine for conjunctions of cylinder elements.
///
/// A committed set of elements is kept together with an exact witness of its
/// meet and arc-consistent value domains per coordinate.  Queries never
/// build the meet as an element, so the union of supports can grow without
/// bound while individual elements stay within the configured width limits.
///
/// Probes are complete: consistent_with/implies answer exactly, using the
/// cached domains as a sound starting point and backtracking search
/// restricted to the connected component of the probe.
class ConjunctionEngine {
public:
  explicit ConjunctionEngine(const BaseSpace& base);

  ConjunctionEngine(const ConjunctionEngine&) = default;
  ConjunctionEngine& operator=(const ConjunctionEngine&) = default;

  const BaseSpace& base() const { return *base_; }
  const std::vector<CylinderElement>& items() const { return items_; }

  /// True when the meet of the committed items is nonzero.  (Trivially true
  /// for the empty set.)
  bool satisfiable() const { return sat_; }

  /// Witness of the meet, defined on the union of committed supports.
  const Assignment& witness() const { return witness_; }

  /// Is the meet of items plus y nonzero?
  bool consistent_with(const CylinderElement& y) const;

  /// Does every point of the meet lie in y?  Equivalent to
  /// !consistent_with(complement(y)) and decided exactly.
  bool implies(const CylinderElement& y) const;

  /// Commit y if the conjunction stays satisfiable.  Returns false (and
  /// leaves the engine unchanged) otherwise.
  bool add(const CylinderElement& y);

private:
  struct Cond {
    CylinderElement elem;
    std::vector<int> vars;  // var indices, one per support position
  };

  int var_of(int coord) const;  // -1 when unknown
  int intern_var(int coord);
  int find_root(std::vector<int>& uf, int v) const;

  // Revise one condition against the given domains; returns false on a
  // domain wipe-out.  `changed` collects vars whose domain shrank.
  bool revise(const Cond& c, std::vector<std::uint32_t>& domains,
              std::vector<int>& changed) const;

  bool propagate(const std::vector<const Cond*>& conds, std::vector<std::uint32_t>& domains,
                 std::vector<int> seed_conds) const;

  // Complete search over the scope vars; domains already arc consistent.
  bool search(const std::vector<const Cond*>& conds,
              const std::vector<std::vector<int>>& var_conds, const std::vector<int>& scope,
              std::vector<std::uint32_t>& domains, long& budget) const;

  // Full probe machinery shared by the public queries.  extra may be null.
  std::optional<Assignment> solve_with(const CylinderElement* extra) const;

  const BaseSpace* base_;
  std::vector<CylinderElement> items_;
  std::vector<Cond> conds_;
  std::vector<int> var_coord_;          // var index -> coordinate
  std::map<int, int> coord_var_;        // coordinate -> var index
  std::vector<std::vector<int>> var_conds_;
  mutable std::vector<int> uf_;         // union-find over vars (components)
  std::vector<std::uint32_t> domains_;  // arc-consistent narrowing
  Assignment witness_;
  bool sat_ = true;
};

/// One-shot check: the meet of the given elements is nonzero, with a
/// witnessing point on success.
std::optional<Assignment> satisfy_conjunction(const BaseSpace& base,
                                              const std::vector<CylinderElement>& items);

std::string assignment_to_text(const Assignment& a);

}  // namespace tca

#endif
