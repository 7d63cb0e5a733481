#ifndef TCA_AXIOMS_HPP
#define TCA_AXIOMS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tca/element.hpp"

namespace tca {

/// One equational (or inequational) law over a concrete algebra.
struct Law {
  std::string id;
  int element_arity = 0;
  int index_arity = 0;
  bool inequality = false;  // check lhs <= rhs instead of lhs == rhs
  std::string note;
  // optional guard over a concrete instance; instances failing it are skipped
  std::function<bool(std::span<const CylinderElement>, std::span<const int>)> guard;
  std::function<CylinderElement(const BaseSpace&, std::span<const CylinderElement>,
                                std::span<const int>)>
      lhs, rhs;
};

struct Counterexample {
  std::string law_id;
  std::vector<CylinderElement> elements;
  std::vector<int> indices;
  CylinderElement lhs_value, rhs_value;
  std::string note;
  std::string describe() const;
};

struct LawVerdict {
  std::string law_id;
  bool holds = true;
  long instances = 0;
  long resource_skips = 0;
  std::string note;
  std::optional<Counterexample> counterexample;
};

struct AxiomReport {
  std::vector<LawVerdict> verdicts;
  bool all_hold() const;
  const LawVerdict* find(const std::string& id) const;
};

/// Evaluates every law over all index tuples below index_bound and all
/// element tuples from the sample.  Deterministic scan order; the first
/// failing instance is kept and re-evaluated before being reported.
AxiomReport run_laws(const BaseSpace& base, const std::vector<Law>& laws, int index_bound,
                     const std::vector<CylinderElement>& sample);

/// Evaluates every law on `instances` seeded random instances (fresh random
/// elements and indices per instance; element supports live inside
/// {0..index_bound}).
AxiomReport run_laws_random(const BaseSpace& base, const std::vector<Law>& laws, int index_bound,
                            long instances, std::uint64_t seed);

/// Recomputes both sides of a stored counterexample; true when they are
/// genuinely unequal (or violate the inequality) under the law set.
bool reevaluate_counterexample(const BaseSpace& base, const std::vector<Law>& laws,
                               const Counterexample& ce);

/// Random element with support inside {0..support_window-1}.
CylinderElement random_element(const BaseSpace& base, int support_window, Rng& rng);

// --- law sets -------------------------------------------------------------

/// Boolean-algebra equations plus the cylindrification and diagonal laws of
/// the cylindric signature.
std::vector<Law> ca_laws();

enum class InteriorReading { literal, corrected };

/// The six interior-operator laws under the chosen reading, plus two
/// diagnostic variants of the substitution law (restricted to a fresh target
/// index, and with the replacement direction swapped) whose empirical status
/// is reported per topology.
std::vector<Law> interior_laws(InteriorReading reading);

// --- the three conformance entry points -----------------------------------

AxiomReport check_ca_axioms(const BaseSpace& base, int index_bound,
                            const std::vector<CylinderElement>& sample);

AxiomReport check_tca_axioms(const BaseSpace& base, int index_bound,
                             const std::vector<CylinderElement>& sample,
                             InteriorReading reading);

/// Endomorphism, composition and single-replacement laws of the substitution
/// operators, over the sample and the given transformation list.
AxiomReport check_substitution_laws(const BaseSpace& base,
                                    const std::vector<CylinderElement>& sample,
                                    const std::vector<FiniteTransformation>& transformations);

}  // namespace tca

#endif
