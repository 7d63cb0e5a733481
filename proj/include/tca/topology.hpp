#ifndef TCA_TOPOLOGY_HPP
#define TCA_TOPOLOGY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tca {

/// Result of checking a family of subsets for the topology closure laws.
struct TopologyCheck {
  bool valid = true;
  std::string violation;  // names the first violated closure and the offending pair
};

/// A topology on the finite base {0..n-1}.  Points are indices, subsets are
/// bit masks.  Immutable after construction; fine to share across threads.
class FiniteTopology {
public:
  /// Validates the closure laws; throws InputError on malformed masks,
  /// returns the family as given otherwise (see validate_topology for the
  /// non-throwing check).
  FiniteTopology(int n, std::vector<std::uint32_t> opens);

  int points() const { return n_; }
  const std::vector<std::uint32_t>& opens() const { return opens_; }
  std::uint32_t full_mask() const { return n_ >= 32 ? 0xffffffffu : ((1u << n_) - 1u); }

  bool is_open(std::uint32_t a) const;

  /// Largest open subset of a: the union of all opens contained in a.
  std::uint32_t interior_of(std::uint32_t a) const;

  bool is_discrete() const;

  bool operator==(const FiniteTopology& other) const = default;

private:
  int n_;
  std::vector<std::uint32_t> opens_;  // sorted, deduplicated
};

/// Checks the two closure invariants (empty/full present, closed under
/// pairwise union and intersection).  Members referencing points >= n throw
/// InputError; closure violations come back as a description.
TopologyCheck validate_topology(int n, const std::vector<std::uint32_t>& family);

/// Smallest topology containing the given sets: close under finite
/// intersections, then all unions; the empty and full sets are always
/// adjoined, even for an empty subbasis.
FiniteTopology from_subbasis(int n, const std::vector<std::uint32_t>& sets);

FiniteTopology discrete_topology(int n);
FiniteTopology indiscrete_topology(int n);

/// {∅, {0}, {0,1}} on two points; the smallest base where interior is not
/// the identity.
FiniteTopology sierpinski_topology();

/// Every topology on {0..n-1}, by brute force over candidate families.
/// Deterministic order.  n <= 4.
std::vector<FiniteTopology> all_topologies(int n);

std::string subset_to_text(std::uint32_t mask);

}  // namespace tca

#endif
