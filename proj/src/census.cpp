#include "tca/census.hpp"

#include <algorithm>

#include "tca/errors.hpp"
#include "tca/rng.hpp"

namespace tca {

CensusSubalgebra::CensusSubalgebra(const BaseSpace& base, std::vector<CylinderElement> generators,
                                   int window)
    : base_(&base), generators_(std::move(generators)) {
  if (generators_.empty()) throw InputError("census subalgebra needs at least one generator");
  int max_coord = -1;
  for (const auto& g : generators_)
    if (!g.support().empty()) max_coord = std::max(max_coord, g.support().back());
  window_ = window >= 0 ? window : max_coord + 1;
  if (window_ < 1) window_ = 1;

  // close the generator set under the window permutations, then refine the
  // unit by every closed generator to get the atoms
  std::vector<CylinderElement> closed;
  for (const auto& line : enumerate_permutations(window_)) {
    auto sigma = FiniteTransformation::from_permutation(line);
    for (const auto& g : generators_) {
      auto img = base.substitute(sigma, g);
      if (std::find(closed.begin(), closed.end(), img) == closed.end())
        closed.push_back(std::move(img));
    }
  }

  atoms_ = {base.one()};
  for (const auto& g : closed) {
    std::vector<CylinderElement> next;
    for (const auto& a : atoms_) {
      auto inside = base.meet(a, g);
      auto outside = base.meet(a, base.complement(g));
      if (!inside.is_zero()) next.push_back(std::move(inside));
      if (!outside.is_zero()) next.push_back(std::move(outside));
    }
    atoms_ = std::move(next);
  }
  std::sort(atoms_.begin(), atoms_.end());

  // closure under the action, verified on atoms (s_sigma permutes them)
  for (const auto& line : enumerate_permutations(window_)) {
    auto sigma = FiniteTransformation::from_permutation(line);
    for (const auto& a : atoms_)
      if (atom_index(base.substitute(sigma, a)) < 0)
        throw InputError("census subalgebra is not closed under the window action");
  }

  if (atoms_.size() <= 10) {
    for (std::uint32_t pick = 0; pick < (1u << atoms_.size()); ++pick) {
      CylinderElement e = base.zero();
      for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (pick & (1u << i)) e = base.join(e, atoms_[i]);
      elements_.push_back(std::move(e));
    }
    std::sort(elements_.begin(), elements_.end());
  }
}

int CensusSubalgebra::atom_index(const CylinderElement& atom) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
  if (it != atoms_.end() && *it == atom) return static_cast<int>(it - atoms_.begin());
  return -1;
}

bool CensusSubalgebra::contains(const CylinderElement& x) const {
  CylinderElement joined = base_->zero();
  for (const auto& a : atoms_)
    if (base_->leq(a, x)) joined = base_->join(joined, a);
  return joined == x;
}

CylinderElement apply_perm_to_filter(const CensusSubalgebra& b0, const std::vector<int>& perm,
                                     const CylinderElement& atom) {
  auto sigma = FiniteTransformation::from_permutation(perm);
  if (!sigma.is_permutation_on(b0.window()))
    throw PreconditionError("not a permutation of the window");
  auto image = b0.base().substitute(sigma, atom);
  if (b0.atom_index(image) < 0) throw PreconditionError("image is not an atom");
  return image;
}

BaseIsoResult base_iso_search(const CensusSubalgebra& b0, const CylinderElement& atom_f,
                              const CylinderElement& atom_g, int tau_sample_count,
                              std::uint64_t seed) {
  if (b0.atom_index(atom_f) < 0 || b0.atom_index(atom_g) < 0)
    throw PreconditionError("base_iso_search expects atoms of the subalgebra");
  const BaseSpace& B = b0.base();
  BaseIsoResult res;
  for (const auto& line : enumerate_permutations(b0.window())) {
    ++res.checked;
    if (apply_perm_to_filter(b0, line, atom_f) != atom_g) continue;
    res.found = true;
    res.perm = line;

    // pointwise check of the induced map on a sample: composing with the
    // inverse permutation must carry membership over atom_f to membership
    // over atom_g, for every subalgebra atom and sampled transformation
    auto sigma = FiniteTransformation::from_permutation(line);
    auto sigma_inv = sigma.inverse().value();
    Rng rng(mix_seed(seed, 0x6f72626974));
    TransformationSampleOptions opt;
    opt.domain_bound = b0.window() + 1;
    opt.value_hi = b0.window() + 2;
    auto taus = sample_transformations(tau_sample_count, opt, rng);
    res.map_verified = true;
    for (const auto& tau : taus)
      for (const auto& a : b0.atoms()) {
        bool lhs = B.leq(atom_f, B.substitute(compose(sigma_inv, tau), a));
        bool rhs = B.leq(atom_g, B.substitute(tau, a));
        if (lhs != rhs) res.map_verified = false;
      }
    return res;
  }
  return res;
}

OrbitReport orbit_count(const CensusSubalgebra& b0) {
  const auto& atoms = b0.atoms();
  std::vector<int> leader(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) leader[i] = static_cast<int>(i);
  auto root = [&](int v) {
    while (leader[static_cast<std::size_t>(v)] != v) v = leader[static_cast<std::size_t>(v)];
    return v;
  };
  for (const auto& line : enumerate_permutations(b0.window()))
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      int j = b0.atom_index(apply_perm_to_filter(b0, line, atoms[i]));
      int a = root(static_cast<int>(i)), b = root(j);
      if (a != b) leader[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }

  OrbitReport report;
  std::vector<int> class_of(atoms.size(), -1);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    int r = root(static_cast<int>(i));
    if (class_of[static_cast<std::size_t>(r)] < 0) {
      class_of[static_cast<std::size_t>(r)] = report.orbit_count++;
      report.classes.emplace_back();
    }
    report.classes[static_cast<std::size_t>(class_of[static_cast<std::size_t>(r)])].push_back(
        static_cast<int>(i));
  }
  return report;
}

std::string OrbitReport::to_text(const CensusSubalgebra& b0) const {
  std::string s = std::to_string(orbit_count) + " orbit(s)\n";
  for (std::size_t c = 0; c < classes.size(); ++c) {
    s += "  class " + std::to_string(c) + ":";
    for (int i : classes[c]) s += " " + b0.atoms()[static_cast<std::size_t>(i)].to_text();
    s += '\n';
  }
  return s;
}

}  // namespace tca
