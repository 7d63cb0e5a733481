#ifndef TCA_CHAINS_HPP
#define TCA_CHAINS_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tca/census.hpp"
#include "tca/conjunction.hpp"
#include "tca/element.hpp"

namespace tca {

enum class TaskKind { henkin, decide, omit, separate };

/// Tasks are plain data; executing one never breaks chain properness.
struct Task {
  TaskKind kind = TaskKind::decide;
  int coordinate = 0;          // henkin: the projected coordinate
  CylinderElement element;     // henkin: the element to witness / decide: the candidate
  int family = 0;              // omit: family index
  FiniteTransformation tau;    // omit: the substitution to block

  static Task henkin(int k, CylinderElement x);
  static Task decide(CylinderElement a);
  static Task omit(int family, FiniteTransformation tau);
  std::string to_text() const;
};

/// Families of elements intended non-principal: every finite sub-meet is
/// nonzero but no nonzero finite-support element lies below the whole
/// family.
struct TypeFamily {
  std::vector<std::vector<CylinderElement>> families;

  bool empty() const { return families.empty(); }

  /// The canonical family: prefix meets of "coordinate j+l equals 0" for
  /// l < m, one member per m in 1..longest.
  static std::vector<CylinderElement> chain_members(const BaseSpace& base, int start, int longest);

  /// Each member nonzero; every sub-meet of size <= depth nonzero.
  void validate(const BaseSpace& base, int depth = 2) const;
};

enum class Membership { in, out, undecided };

struct HenkinRecord {
  int coordinate;
  CylinderElement element;
  int witness;
};

struct OmitRecord {
  int family;
  FiniteTransformation tau;
  CylinderElement member;   // the family member whose substitution was blocked
  CylinderElement negated;  // the committed condition
};

/// An ordered, properness-preserving list of committed conditions.  The
/// filter it generates is queried through contains/membership; the meet
/// itself is never materialized.  Single-owner: mutate only through step
/// and commit; copies (branches) are independent.
class ChainState {
public:
  ChainState(const BaseSpace& base, CylinderElement seed, std::uint64_t rng_seed = 0);

  const BaseSpace& base() const { return engine_.base(); }
  const CylinderElement& seed() const { return seed_; }
  const std::vector<CylinderElement>& conditions() const { return engine_.items(); }
  long step_count() const { return step_count_; }

  /// Witnessing point of the meet of all conditions (the properness
  /// certificate).
  const Assignment& witness() const { return engine_.witness(); }

  /// Membership in the generated filter: the meet of all conditions lies
  /// below y.  Upward closure comes for free.
  bool contains(const CylinderElement& y) const;

  /// in when the filter contains x, out when it contains the complement,
  /// undecided otherwise -- unless force, which decides x first.
  Membership membership(const CylinderElement& x, bool force = false);

  /// Executes one task.  Omit tasks need the family definitions.
  void step(const Task& task, const TypeFamily* families = nullptr);

  /// Commit a condition directly; throws if it would break properness.
  void commit(const CylinderElement& y, const std::string& label);

  /// Two independent copies with identical conditions and divergent rng
  /// streams.
  std::pair<ChainState, ChainState> branch() const;

  bool consistent_with(const CylinderElement& y) const { return engine_.consistent_with(y); }

  const std::vector<HenkinRecord>& henkin_log() const { return henkin_log_; }
  const std::vector<OmitRecord>& omit_log() const { return omit_log_; }
  const std::map<CylinderElement, bool>& decided() const { return decided_; }
  const std::set<int>& support_coords() const { return support_coords_; }
  const std::set<int>& used_witnesses() const { return used_witnesses_; }
  std::uint64_t rng_seed() const { return rng_state_; }

  void set_trace(std::ostream* sink) { trace_ = sink; }

private:
  int fresh_witness(int k, const CylinderElement& x) const;
  void trace_line(const std::string& task, const CylinderElement& committed);

  ConjunctionEngine engine_;
  CylinderElement seed_;
  std::map<CylinderElement, bool> decided_;
  std::set<int> support_coords_;
  std::set<int> used_witnesses_;
  std::vector<HenkinRecord> henkin_log_;
  std::vector<OmitRecord> omit_log_;
  long step_count_ = 0;
  std::uint64_t rng_state_ = 0;
  std::ostream* trace_ = nullptr;
};

/// The finite meet of the given conditions is nonzero.
bool is_proper(const BaseSpace& base, const std::vector<CylinderElement>& conditions);

struct ScheduleOptions {
  int henkin_index_bound = 3;  // projected coordinates k < bound
  int omit_tau_bound = 4;      // substitutions over {0..bound-1}
  int decide_coord_bound = 4;  // seed pool of diagonals/cylinders below this
  std::uint64_t rng_seed = 0;
  std::ostream* trace = nullptr;
};

/// Round-robin schedule: witness tasks over pairs drawn from the chain's
/// own committed conditions, decision tasks over a deterministic enumeration
/// of the generated subalgebra, omit tasks over all (family, tau) pairs with
/// tau of bounded support.  The returned chain is proper and holds the seed.
ChainState run_schedule(const BaseSpace& base, const CylinderElement& seed,
                        const TypeFamily& families, long steps, const ScheduleOptions& opt = {});

struct HenkinReplay {
  long processed = 0;
  long applicable = 0;  // pairs whose projection is in the final filter
  long failures = 0;
  bool ok() const { return failures == 0; }
};

/// Re-checks the witness condition on the final filter: whenever the
/// projection of a processed pair is in the filter, so is its committed
/// witness substitution.
HenkinReplay verify_henkin_invariant(const ChainState& chain);

struct OmitReplay {
  long pairs = 0;
  long failures = 0;
  bool ok() const { return failures == 0; }
};

/// Re-checks, for every scheduled (family, tau) pair, that some family
/// member's substitution is out of the final filter.
OmitReplay verify_omit_invariant(const ChainState& chain, const TypeFamily& families);

// --- twin-model separation game -------------------------------------------

struct SeparateOutcome {
  bool split = false;
  bool principal = false;       // the second chain's meet is a census atom
  CylinderElement split_element;  // committed to the second chain; complement to the first
};

/// One separation move between two live chains: if the meet of the second
/// chain is an atom of the census subalgebra both are left alone; otherwise
/// a fresh-coordinate cylinder splits them apart.
SeparateOutcome separate_step(ChainState& first, ChainState& second,
                              const CensusSubalgebra& census);

struct TwinGameOptions {
  int henkin_index_bound = 2;
  int decide_coord_bound = 3;
  std::uint64_t rng_seed = 0;
  std::ostream* trace = nullptr;
};

struct TwinGameResult {
  ChainState t, s;
  long separations = 0;
  long splits = 0;
  std::vector<CylinderElement> split_elements;
  long disagreements = 0;
  std::vector<CylinderElement> common_atoms;  // census atoms below both meets
  bool principality_ok = true;                // at most one common atom
};

TwinGameResult twin_game(const BaseSpace& base, const CensusSubalgebra& census, long steps,
                         const TwinGameOptions& opt = {});

/// Number of decided elements on which the two chains take opposite sides,
/// over the given probe list.
long count_disagreements(ChainState& a, ChainState& b, const std::vector<CylinderElement>& probes);

/// Splits one chain into 2^depth leaves, then plays one separation move
/// between every pair, leaving the leaves pairwise disagreeing.
std::vector<ChainState> branch_tree(const BaseSpace& base, const CensusSubalgebra& census,
                                    int depth, const TwinGameOptions& opt = {});

}  // namespace tca

#endif
