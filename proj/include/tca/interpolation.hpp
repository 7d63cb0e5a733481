#ifndef TCA_INTERPOLATION_HPP
#define TCA_INTERPOLATION_HPP

#include <string>
#include <vector>

#include "tca/chains.hpp"
#include "tca/element.hpp"

namespace tca {

struct ClosureCaps {
  int support_cap = 2;             // operation indices < support_cap
  int depth_cap = 3;               // closure rounds
  std::size_t max_elements = 512;  // hard size cutoff, reported as truncation
};

/// Finite approximation of a generated subalgebra: fixed-point closure under
/// complement, meet, projection, diagonals, single replacements and interior
/// with indices below the cap, truncated at the depth cap.  Every element
/// remembers one generating term.  Deterministic enumeration order.
class GeneratedSubalgebra {
public:
  GeneratedSubalgebra(const BaseSpace& base, std::vector<CylinderElement> generators,
                      ClosureCaps caps);

  const std::vector<CylinderElement>& elements() const { return elements_; }
  const std::string& term_of(std::size_t index) const { return terms_[index]; }
  int find(const CylinderElement& x) const;
  bool truncated() const { return truncated_; }
  long resource_skips() const { return resource_skips_; }
  const std::string& first_resource_note() const { return resource_note_; }
  const ClosureCaps& caps() const { return caps_; }

private:
  void push(CylinderElement e, std::string term);
  std::vector<CylinderElement> elements_;
  std::vector<std::string> terms_;
  ClosureCaps caps_;
  bool truncated_ = false;
  long resource_skips_ = 0;
  std::string resource_note_;
};

GeneratedSubalgebra sg_closure(const BaseSpace& base,
                               const std::vector<CylinderElement>& generators,
                               const ClosureCaps& caps);

struct InterpolationInstance {
  std::vector<CylinderElement> x1, x2;
  CylinderElement a, c;
};

/// Validates a <= c; throws PreconditionError otherwise.
InterpolationInstance make_instance(const BaseSpace& base, std::vector<CylinderElement> x1,
                                    std::vector<CylinderElement> x2, CylinderElement a,
                                    CylinderElement c);

/// Generator lists intersected by value.
std::vector<CylinderElement> common_generators(const InterpolationInstance& inst);

struct InterpolantResult {
  bool found = false;
  CylinderElement interpolant;
  std::string term;
  ClosureCaps caps;
  bool truncated = false;  // the search space was cut off; absence proves nothing
};

/// First element of the common-generator closure lying between a and c.
/// A negative result never claims nonexistence: it reports the caps
/// searched.
InterpolantResult find_interpolant(const BaseSpace& base, const InterpolationInstance& inst,
                                   const ClosureCaps& caps);

/// Every interpolant inside the capped closure, in enumeration order.
std::vector<CylinderElement> interpolant_candidates(const BaseSpace& base,
                                                    const InterpolationInstance& inst,
                                                    const ClosureCaps& caps);

struct SeparatingFiltersReport {
  bool proper = true;
  // first violating pair: both sides of the would-be separation collapse
  int violation_prefix_a = -1;
  int violation_prefix_c = -1;
  CylinderElement violating_b0, violating_b1;

  std::vector<CylinderElement> trace_a;  // a with its witness disjunctions
  std::vector<CylinderElement> trace_c;  // -c with its witness disjunctions
  std::vector<CylinderElement> h_members;  // common-subalgebra members forced by either trace
  long common_size = 0;

  // ultrafilter extension stage, attempted only when the common filter is
  // proper
  bool built_extensions = false;
  long f1_witness_failures = -1;
  long f2_witness_failures = -1;
  long common_agreements = 0;
  long common_disagreements = 0;

  std::string footer;
};

/// The refutation machinery: witness traces over both generated subalgebras
/// with interleaved fresh coordinates, the induced filter on the common
/// subalgebra, and the exhaustive properness check over all scheduled prefix
/// pairs.  A properness failure pinpoints a pair whose meet vanishes --
/// which is exactly an interpolant lead, cross-checkable against
/// find_interpolant.
SeparatingFiltersReport build_separating_filters(const BaseSpace& base,
                                                 const InterpolationInstance& inst, int steps,
                                                 const ClosureCaps& caps);

}  // namespace tca

#endif
