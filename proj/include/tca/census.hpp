#ifndef TCA_CENSUS_HPP
#define TCA_CENSUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "tca/element.hpp"

namespace tca {

/// A finite Boolean subalgebra closed under the substitutions induced by
/// every permutation of the index window {0..m-1}.  Atoms are computed at
/// construction; they are exactly the ultrafilters of the subalgebra, which
/// is what the orbit census counts.
class CensusSubalgebra {
public:
  /// window < 0 means: one past the largest generator support coordinate.
  CensusSubalgebra(const BaseSpace& base, std::vector<CylinderElement> generators,
                   int window = -1);

  const BaseSpace& base() const { return *base_; }
  int window() const { return window_; }
  const std::vector<CylinderElement>& generators() const { return generators_; }
  const std::vector<CylinderElement>& atoms() const { return atoms_; }

  /// All elements, materialized when the atom count is small; joins of atoms
  /// in subset order otherwise unavailable (empty).
  const std::vector<CylinderElement>& elements() const { return elements_; }

  int atom_index(const CylinderElement& atom) const;  // -1 when absent
  bool contains(const CylinderElement& x) const;      // member of the subalgebra

private:
  const BaseSpace* base_;
  std::vector<CylinderElement> generators_;
  int window_;
  std::vector<CylinderElement> atoms_;
  std::vector<CylinderElement> elements_;
};

/// The atom generating the image filter: s_sigma maps the principal
/// ultrafilter of `atom` onto the principal ultrafilter of the result.
CylinderElement apply_perm_to_filter(const CensusSubalgebra& b0, const std::vector<int>& perm,
                                     const CylinderElement& atom);

struct BaseIsoResult {
  bool found = false;
  std::vector<int> perm;   // one-line notation over the window
  long checked = 0;        // permutations tried
  bool map_verified = false;  // pointwise check of the induced map on a sample
};

/// Searches all window! permutations for one carrying the ultrafilter of F
/// onto the ultrafilter of G; verifies the induced map pointwise on a
/// seeded transformation sample when found.
BaseIsoResult base_iso_search(const CensusSubalgebra& b0, const CylinderElement& atom_f,
                              const CylinderElement& atom_g, int tau_sample_count = 16,
                              std::uint64_t seed = 0);

struct OrbitReport {
  int orbit_count = 0;
  std::vector<std::vector<int>> classes;  // atom indices, each class sorted
  std::string to_text(const CensusSubalgebra& b0) const;
};

/// Partition of the atoms under reachability by window permutations.
OrbitReport orbit_count(const CensusSubalgebra& b0);

}  // namespace tca

#endif
