#include "tca/topology.hpp"

#include <algorithm>

#include "tca/errors.hpp"

namespace tca {

namespace {

std::vector<std::uint32_t> sorted_dedup(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_members(int n, const std::vector<std::uint32_t>& family) {
  if (n < 0 || n > 16) throw InputError("base cardinality out of range (0..16): " + std::to_string(n));
  const std::uint32_t full = n >= 32 ? 0xffffffffu : ((1u << n) - 1u);
  for (std::uint32_t m : family)
    if ((m & ~full) != 0)
      throw InputError("open set " + subset_to_text(m) + " references a point >= " + std::to_string(n));
}

}  // namespace

TopologyCheck validate_topology(int n, const std::vector<std::uint32_t>& family) {
  check_members(n, family);
  const std::uint32_t full = n >= 32 ? 0xffffffffu : ((1u << n) - 1u);
  auto opens = sorted_dedup(family);
  auto has = [&](std::uint32_t m) { return std::binary_search(opens.begin(), opens.end(), m); };

  if (!has(0)) return {false, "empty set missing"};
  if (!has(full)) return {false, "full set " + subset_to_text(full) + " missing"};
  for (std::uint32_t a : opens)
    for (std::uint32_t b : opens) {
      if (!has(a | b))
        return {false, "union " + subset_to_text(a) + " u " + subset_to_text(b) + " missing"};
      if (!has(a & b))
        return {false, "intersection " + subset_to_text(a) + " n " + subset_to_text(b) + " missing"};
    }
  return {};
}

FiniteTopology::FiniteTopology(int n, std::vector<std::uint32_t> opens)
    : n_(n), opens_(sorted_dedup(std::move(opens))) {
  auto check = validate_topology(n_, opens_);
  if (!check.valid) throw InputError("not a topology: " + check.violation);
}

bool FiniteTopology::is_open(std::uint32_t a) const {
  return std::binary_search(opens_.begin(), opens_.end(), a);
}

std::uint32_t FiniteTopology::interior_of(std::uint32_t a) const {
  std::uint32_t in = 0;
  for (std::uint32_t o : opens_)
    if ((o & ~a) == 0) in |= o;
  return in;
}

bool FiniteTopology::is_discrete() const {
  return opens_.size() == (1u << n_);
}

FiniteTopology from_subbasis(int n, const std::vector<std::uint32_t>& sets) {
  check_members(n, sets);
  const std::uint32_t full = n >= 32 ? 0xffffffffu : ((1u << n) - 1u);
  std::vector<std::uint32_t> fam = sets;
  fam.push_back(0);
  fam.push_back(full);
  fam = sorted_dedup(std::move(fam));
  // close under pairwise intersections, then pairwise unions; repeat to a
  // fixed point (the base is finite, so this reaches arbitrary unions too)
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint32_t> add;
    for (std::uint32_t a : fam)
      for (std::uint32_t b : fam) {
        std::uint32_t m = a & b, j = a | b;
        if (!std::binary_search(fam.begin(), fam.end(), m)) add.push_back(m);
        if (!std::binary_search(fam.begin(), fam.end(), j)) add.push_back(j);
      }
    if (!add.empty()) {
      fam.insert(fam.end(), add.begin(), add.end());
      fam = sorted_dedup(std::move(fam));
      grew = true;
    }
  }
  return FiniteTopology(n, std::move(fam));
}

FiniteTopology discrete_topology(int n) {
  if (n < 0 || n > 16) throw InputError("discrete topology: base out of range");
  std::vector<std::uint32_t> opens;
  opens.reserve(1u << n);
  for (std::uint32_t m = 0; m < (1u << n); ++m) opens.push_back(m);
  return FiniteTopology(n, std::move(opens));
}

FiniteTopology indiscrete_topology(int n) {
  const std::uint32_t full = (1u << n) - 1u;
  return FiniteTopology(n, {0, full});
}

FiniteTopology sierpinski_topology() {
  return FiniteTopology(2, {0u, 1u, 3u});
}

std::vector<FiniteTopology> all_topologies(int n) {
  if (n < 1 || n > 4) throw InputError("all_topologies supports 1 <= n <= 4");
  const std::uint32_t full = (1u << n) - 1u;
  // candidate families: every subset of the proper nonempty subsets, with
  // the empty and full set always present
  std::vector<std::uint32_t> mid;
  for (std::uint32_t m = 1; m < full; ++m) mid.push_back(m);
  std::vector<FiniteTopology> out;
  for (std::uint64_t pick = 0; pick < (1ull << mid.size()); ++pick) {
    std::vector<std::uint32_t> fam = {0u, full};
    for (std::size_t i = 0; i < mid.size(); ++i)
      if (pick & (1ull << i)) fam.push_back(mid[i]);
    if (validate_topology(n, fam).valid) out.emplace_back(n, std::move(fam));
  }
  return out;
}

std::string subset_to_text(std::uint32_t mask) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) {
      if (!first) s += ' ';
      s += std::to_string(i);
      first = false;
    }
  s += '}';
  return s;
}

}  // namespace tca
