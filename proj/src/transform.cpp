#include "tca/transform.hpp"

#include <algorithm>
#include <numeric>

#include "tca/errors.hpp"

namespace tca {

FiniteTransformation FiniteTransformation::replace(int from, int to) {
  FiniteTransformation t;
  if (from != to) t.moved_[from] = to;
  return t;
}

FiniteTransformation FiniteTransformation::from_map(const std::map<int, int>& moved) {
  FiniteTransformation t;
  for (auto [k, v] : moved)
    if (k != v) t.moved_[k] = v;
  return t;
}

FiniteTransformation FiniteTransformation::from_permutation(const std::vector<int>& one_line) {
  std::map<int, int> m;
  for (std::size_t i = 0; i < one_line.size(); ++i) m[static_cast<int>(i)] = one_line[i];
  return from_map(m);
}

int FiniteTransformation::operator()(int i) const {
  auto it = moved_.find(i);
  return it == moved_.end() ? i : it->second;
}

FiniteTransformation FiniteTransformation::with(int i, int value) const {
  FiniteTransformation t = *this;
  if (i == value)
    t.moved_.erase(i);
  else
    t.moved_[i] = value;
  return t;
}

bool FiniteTransformation::is_permutation_on(int window) const {
  std::vector<bool> hit(window, false);
  for (int i = 0; i < window; ++i) {
    int v = (*this)(i);
    if (v < 0 || v >= window || hit[v]) return false;
    hit[v] = true;
  }
  for (auto [k, v] : moved_)
    if (k >= window || v >= window) return false;
  return true;
}

std::optional<FiniteTransformation> FiniteTransformation::inverse() const {
  std::map<int, int> inv;
  for (auto [k, v] : moved_) {
    if (inv.count(v)) return std::nullopt;
    inv[v] = k;
  }
  // every moved target must itself be moved somewhere for the inverse to be
  // a two-sided inverse on the moved set
  for (auto [k, v] : moved_) {
    (void)v;
    if (!inv.count(k) && moved_.count(k)) {
      // k is a source; if nothing maps onto k the map was not surjective on
      // its moved set
      bool covered = false;
      for (auto [a, b] : moved_) {
        (void)a;
        if (b == k) covered = true;
      }
      if (!covered) return std::nullopt;
    }
  }
  return from_map(inv);
}

int FiniteTransformation::max_coordinate() const {
  int m = -1;
  for (auto [k, v] : moved_) m = std::max({m, k, v});
  return m;
}

std::string FiniteTransformation::to_text() const {
  if (moved_.empty()) return "id";
  std::string s = "[";
  bool first = true;
  for (auto [k, v] : moved_) {
    if (!first) s += ' ';
    s += std::to_string(k) + ">" + std::to_string(v);
    first = false;
  }
  s += ']';
  return s;
}

FiniteTransformation compose(const FiniteTransformation& f, const FiniteTransformation& g) {
  std::map<int, int> m;
  for (auto [k, v] : g.moved()) m[k] = f(v);
  for (auto [k, v] : f.moved())
    if (!m.count(k)) m[k] = v;
  return FiniteTransformation::from_map(m);
}

std::vector<FiniteTransformation> enumerate_transformations(int bound) {
  if (bound < 0 || bound > 8) throw InputError("transformation bound out of range (0..8)");
  std::vector<FiniteTransformation> out;
  std::uint64_t total = 1;
  for (int i = 0; i < bound; ++i) total *= static_cast<std::uint64_t>(bound);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::map<int, int> m;
    std::uint64_t c = code;
    for (int i = 0; i < bound; ++i) {
      m[i] = static_cast<int>(c % bound);
      c /= bound;
    }
    out.push_back(FiniteTransformation::from_map(m));
  }
  // codes with distinct tables can collapse to the same map once identity
  // entries are dropped; keep first occurrences only
  std::vector<FiniteTransformation> dedup;
  for (auto& t : out)
    if (std::find(dedup.begin(), dedup.end(), t) == dedup.end()) dedup.push_back(t);
  return dedup;
}

std::vector<std::vector<int>> enumerate_permutations(int window) {
  std::vector<int> line(window);
  std::iota(line.begin(), line.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(line);
  } while (std::next_permutation(line.begin(), line.end()));
  return out;
}

std::vector<FiniteTransformation> sample_transformations(int count,
                                                         const TransformationSampleOptions& opt,
                                                         Rng& rng) {
  std::vector<FiniteTransformation> out;
  if (count <= 0) return out;
  out.push_back(FiniteTransformation::identity());
  while (static_cast<int>(out.size()) < count) {
    int moved = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.max_moved)));
    std::map<int, int> m;
    for (int j = 0; j < moved; ++j) {
      int from = rng.range(0, opt.domain_bound);
      int to = rng.range(opt.value_lo, opt.value_hi);
      m[from] = to;
    }
    out.push_back(FiniteTransformation::from_map(m));
  }
  return out;
}

}  // namespace tca
