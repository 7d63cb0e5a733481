#ifndef TCA_REPRESENTATION_HPP
#define TCA_REPRESENTATION_HPP

#include <string>
#include <vector>

#include "tca/chains.hpp"
#include "tca/element.hpp"

namespace tca {

/// Partition of {0..bound-1} induced by the diagonal elements the filter
/// contains.  Reflexive, symmetric and transitive by construction (the
/// filter forces transitivity through the diagonal inequalities).
struct DiagPartition {
  int bound = 0;
  std::vector<int> leader;  // least member of each block

  bool related(int i, int j) const;
  int block_of(int i) const;
  std::vector<std::vector<int>> blocks() const;
};

/// Blocks computed from the diagonals the chain's filter already contains
/// (no decisions are forced).
DiagPartition diag_partition(const ChainState& chain, int bound);

/// A filter-induced representation: the source chain, the diagonal quotient
/// and the membership oracle tau |-> (substituted element in the filter).
/// Images are infinite sets of finite-support transformations, so the map
/// stays an oracle; verification is pointwise on samples.
class Representation {
public:
  Representation(ChainState chain, CylinderElement seed, int diag_bound = 4);

  const BaseSpace& base() const { return chain_.base(); }
  ChainState& chain() { return chain_; }
  const ChainState& chain() const { return chain_; }
  const CylinderElement& seed() const { return seed_; }
  int diag_bound() const { return diag_bound_; }

  /// tau-class membership in the image of x; forces a decision when the
  /// filter has not determined it yet.
  bool member(const CylinderElement& x, const FiniteTransformation& tau);

  DiagPartition partition(int bound) const { return diag_partition(chain_, bound); }

private:
  ChainState chain_;
  CylinderElement seed_;
  int diag_bound_;
};

/// Runs the witness/decision schedule below the seed and wraps the final
/// chain.  The image of the seed contains the identity class.
Representation build_representation(const BaseSpace& base, const CylinderElement& seed,
                                    long steps, const ScheduleOptions& opt = {});

/// Oracle agreement on two transformations that agree blockwise under the
/// diagonal partition (over the element's support and both moved sets).
/// Throws PreconditionError when they do not.
bool check_well_defined(Representation& rep, const CylinderElement& x,
                        const FiniteTransformation& sigma, const FiniteTransformation& tau);

struct WitnessTable {
  CylinderElement term;
  int coord = 0;
  std::vector<int> members;  // indices below the family's k_bound
};

struct InteriorWitnessFamily {
  int k_bound = 6;
  std::vector<WitnessTable> tables;
  int find(const CylinderElement& term, int coord) const;  // -1 when absent
};

/// Materializes, for every term and index, the predicate table of indices
/// whose substituted interior lies in the filter (forcing decisions as
/// needed).
InteriorWitnessFamily interior_witnesses(Representation& rep,
                                         const std::vector<CylinderElement>& terms,
                                         int index_bound, int k_bound);

struct InteriorRepCheck {
  FiniteTransformation tau;
  bool image_side = false;    // interior applied before mapping
  bool witness_side = false;  // witness set found around the mapped index
  int witness_table = -1;
  bool agree() const { return image_side == witness_side; }
};

struct InteriorRepReport {
  std::vector<InteriorRepCheck> rows;
  int tables_added = 0;  // tables materialized on top of the given family
  bool all_agree() const;
};

/// Checks both directions of the interior equation on the sample: mapping
/// the interior agrees with the open-witness condition over the quotient.
/// The family is extended with the table each sampled transformation calls
/// for; the count of added tables is reported.
InteriorRepReport verify_interior_rep(Representation& rep, InteriorWitnessFamily q,
                                      const CylinderElement& p, int i,
                                      const std::vector<FiniteTransformation>& taus);

struct HomomorphismOptions {
  int diag_bound = 3;
  int cyl_bound = 2;
  int witness_window = 6;
};

struct HomomorphismReport {
  long meet_checks = 0;
  long complement_checks = 0;
  long diag_checks = 0;
  long cyl_checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Pointwise homomorphism checks over the sample: meets, complements,
/// diagonals against the quotient partition, and the projection/witness
/// equivalence over a bounded witness window plus one guaranteed-fresh
/// coordinate.
HomomorphismReport verify_homomorphism(Representation& rep,
                                       const std::vector<CylinderElement>& terms,
                                       const std::vector<FiniteTransformation>& taus,
                                       const HomomorphismOptions& opt = {});

}  // namespace tca

#endif
