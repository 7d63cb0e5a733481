#ifndef TCA_TRANSFORM_HPP
#define TCA_TRANSFORM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tca/rng.hpp"

namespace tca {

/// A map from coordinates to coordinates that is the identity off a finite
/// set.  Entries with tau(i) == i are never stored, so equality of the
/// stored maps is equality of functions.
class FiniteTransformation {
public:
  FiniteTransformation() = default;  // identity

  static FiniteTransformation identity() { return {}; }

  /// [from|to]: sends `from` to `to`, identity elsewhere.
  static FiniteTransformation replace(int from, int to);

  static FiniteTransformation from_map(const std::map<int, int>& moved);

  /// A permutation of {0..window-1} given in one-line notation.
  static FiniteTransformation from_permutation(const std::vector<int>& one_line);

  int operator()(int i) const;

  const std::map<int, int>& moved() const { return moved_; }
  bool is_identity() const { return moved_.empty(); }

  /// Copy with one value overridden (the i-variant of this transformation).
  FiniteTransformation with(int i, int value) const;

  bool is_permutation_on(int window) const;
  std::optional<FiniteTransformation> inverse() const;  // empty if not injective

  /// Largest coordinate mentioned (domain or range); -1 for the identity.
  int max_coordinate() const;

  bool operator==(const FiniteTransformation&) const = default;
  bool operator<(const FiniteTransformation& other) const { return moved_ < other.moved_; }

  std::string to_text() const;

private:
  std::map<int, int> moved_;
};

/// Standard composition: compose(f, g)(i) == f(g(i)).
FiniteTransformation compose(const FiniteTransformation& f, const FiniteTransformation& g);

/// All maps with domain and range inside {0..bound-1}, in a fixed order
/// (lexicographic in the value table).  Includes the identity.
std::vector<FiniteTransformation> enumerate_transformations(int bound);

/// All permutations of {0..window-1} in lexicographic one-line order.
std::vector<std::vector<int>> enumerate_permutations(int window);

struct TransformationSampleOptions {
  int domain_bound = 4;   // moved coordinates drawn from {0..domain_bound-1}
  int value_lo = 0;       // values drawn from [value_lo, value_hi)
  int value_hi = 6;
  int max_moved = 3;
};

/// Deterministic seeded sample; always starts with the identity.
std::vector<FiniteTransformation> sample_transformations(int count,
                                                         const TransformationSampleOptions& opt,
                                                         Rng& rng);

}  // namespace tca

#endif
