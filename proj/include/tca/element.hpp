#ifndef TCA_ELEMENT_HPP
#define TCA_ELEMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tca/topology.hpp"
#include "tca/transform.hpp"

namespace tca {

/// A finite-support cylinder subset of the space of all infinite sequences
/// over the base.  Kept in canonical form: the stored support is exactly the
/// set of coordinates the subset depends on, so structural equality is
/// equality of denotations.
///
/// Row tables are bit vectors of length n^|support|, coordinate order
/// ascending, first support coordinate least significant.  The zero element
/// is the empty support with an empty row set; the unit is the empty support
/// with the empty tuple present.
class CylinderElement {
public:
  CylinderElement() : base_(1), rows_(1, false) {}  // zero over a one-point base

  static CylinderElement canonical(int base, std::vector<int> support, std::vector<bool> rows);
  static CylinderElement from_tuples(int base, std::vector<int> support,
                                     const std::vector<std::vector<int>>& tuples);

  int base() const { return base_; }
  const std::vector<int>& support() const { return support_; }
  const std::vector<bool>& rows() const { return rows_; }

  bool is_zero() const { return support_.empty() && !rows_[0]; }
  bool is_one() const { return support_.empty() && rows_[0]; }

  /// Number of set rows (tuples present over the support).
  std::size_t tuple_count() const;

  bool operator==(const CylinderElement& other) const = default;
  bool operator<(const CylinderElement& other) const;

  std::string to_text(std::size_t max_tuples = 12) const;

private:
  friend class BaseSpace;
  int base_;
  std::vector<int> support_;  // sorted ascending
  std::vector<bool> rows_;    // n^|support| bits
};

struct Limits {
  int max_support = 8;
  std::size_t max_rows = std::size_t{1} << 20;
};

/// The carrier of one concrete algebra: the base set with its topology plus
/// the size limits every operation enforces.  All operations are pure; the
/// space itself never mutates, so it can be shared freely.
class BaseSpace {
public:
  explicit BaseSpace(FiniteTopology topology, Limits limits = {});

  int points() const { return topology_.points(); }
  const FiniteTopology& topology() const { return topology_; }
  const Limits& limits() const { return limits_; }

  CylinderElement zero() const;
  CylinderElement one() const;

  /// The set of sequences whose entries at i and j coincide.
  CylinderElement diagonal(int i, int j) const;

  /// The set of sequences with value `value` at coordinate c.
  CylinderElement coord_eq(int c, int value) const;

  /// Canonical element from explicit tuples over a support.
  CylinderElement element(std::vector<int> support,
                          const std::vector<std::vector<int>>& tuples) const;

  CylinderElement complement(const CylinderElement& x) const;
  CylinderElement meet(const CylinderElement& x, const CylinderElement& y) const;
  CylinderElement join(const CylinderElement& x, const CylinderElement& y) const;

  /// Projection along coordinate i: a sequence belongs to the result when
  /// some i-variant of it belongs to x.
  CylinderElement cylindrify(int i, const CylinderElement& x) const;

  /// The dual projection -c_i(-x): every i-variant belongs to x.
  CylinderElement dual_cylindrify(int i, const CylinderElement& x) const;

  /// {s : s∘tau ∈ x}.  A Boolean endomorphism for every finite tau.
  CylinderElement substitute(const FiniteTransformation& tau, const CylinderElement& x) const;

  /// Coordinatewise topological interior: s belongs to the result when s_k
  /// lies in the interior of {u : the k-variant of s through u is in x}.
  CylinderElement interior(int k, const CylinderElement& x) const;

  bool leq(const CylinderElement& x, const CylinderElement& y) const;

  /// meet(x, complement(y)) is zero and meet(y, complement(x)) is zero.
  bool equal(const CylinderElement& x, const CylinderElement& y) const { return x == y; }

private:
  void check_base(const CylinderElement& x) const;
  FiniteTopology topology_;
  Limits limits_;
};

}  // namespace tca

#endif
