#include "tca/element.hpp"

#include <algorithm>

#include "tca/errors.hpp"

namespace tca {

namespace {

std::size_t power(int n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= static_cast<std::size_t>(n);
  return r;
}

int digit_at(std::size_t idx, std::size_t pos_pow, int n) {
  return static_cast<int>((idx / pos_pow) % static_cast<std::size_t>(n));
}

void require_sorted_support(const std::vector<int>& support) {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0) throw InputError("negative coordinate in support");
    if (i > 0 && support[i] <= support[i - 1])
      throw InputError("support must be strictly ascending");
  }
}

}  // namespace

CylinderElement CylinderElement::canonical(int base, std::vector<int> support,
                                           std::vector<bool> rows) {
  if (base < 1) throw InputError("base cardinality must be >= 1");
  require_sorted_support(support);
  const int n = base;
  const std::size_t k = support.size();
  if (rows.size() != power(n, k)) throw InputError("row table size does not match support");

  // A coordinate is redundant when the row set is closed under changing its
  // entry; drop all of them at once (dropping one cannot create another).
  std::vector<std::size_t> pows(k);
  for (std::size_t p = 0; p < k; ++p) pows[p] = power(n, p);
  std::vector<bool> redundant(k, true);
  for (std::size_t p = 0; p < k && k > 0; ++p) {
    for (std::size_t idx = 0; idx < rows.size() && redundant[p]; ++idx) {
      if (digit_at(idx, pows[p], n) != 0) continue;
      const bool b = rows[idx];
      for (int d = 1; d < n; ++d)
        if (rows[idx + static_cast<std::size_t>(d) * pows[p]] != b) {
          redundant[p] = false;
          break;
        }
    }
  }

  std::vector<int> kept_support;
  std::vector<std::size_t> kept_pos;
  for (std::size_t p = 0; p < k; ++p)
    if (!redundant[p]) {
      kept_support.push_back(support[p]);
      kept_pos.push_back(p);
    }
  if (kept_support.size() == k) {
    CylinderElement e;
    e.base_ = base;
    e.support_ = std::move(support);
    e.rows_ = std::move(rows);
    return e;
  }

  const std::size_t kk = kept_support.size();
  std::vector<bool> out(power(n, kk), false);
  std::vector<std::size_t> kept_pows(kk);
  for (std::size_t q = 0; q < kk; ++q) kept_pows[q] = power(n, q);
  for (std::size_t new_idx = 0; new_idx < out.size(); ++new_idx) {
    std::size_t old_idx = 0;
    for (std::size_t q = 0; q < kk; ++q)
      old_idx += static_cast<std::size_t>(digit_at(new_idx, kept_pows[q], n)) * pows[kept_pos[q]];
    out[new_idx] = rows[old_idx];
  }
  CylinderElement e;
  e.base_ = base;
  e.support_ = std::move(kept_support);
  e.rows_ = std::move(out);
  return e;
}

CylinderElement CylinderElement::from_tuples(int base, std::vector<int> support,
                                             const std::vector<std::vector<int>>& tuples) {
  require_sorted_support(support);
  const std::size_t k = support.size();
  std::vector<bool> rows(power(base, k), false);
  for (const auto& t : tuples) {
    if (t.size() != k) throw InputError("tuple arity does not match support size");
    std::size_t idx = 0;
    std::size_t pw = 1;
    for (std::size_t p = 0; p < k; ++p) {
      if (t[p] < 0 || t[p] >= base) throw InputError("tuple entry out of base range");
      idx += static_cast<std::size_t>(t[p]) * pw;
      pw *= static_cast<std::size_t>(base);
    }
    rows[idx] = true;
  }
  return canonical(base, std::move(support), std::move(rows));
}

std::size_t CylinderElement::tuple_count() const {
  return static_cast<std::size_t>(std::count(rows_.begin(), rows_.end(), true));
}

bool CylinderElement::operator<(const CylinderElement& other) const {
  if (base_ != other.base_) return base_ < other.base_;
  if (support_ != other.support_) return support_ < other.support_;
  return std::lexicographical_compare(rows_.begin(), rows_.end(), other.rows_.begin(),
                                      other.rows_.end());
}

std::string CylinderElement::to_text(std::size_t max_tuples) const {
  if (is_zero()) return "0";
  if (is_one()) return "1";
  std::string s = "{";
  for (std::size_t p = 0; p < support_.size(); ++p) {
    if (p) s += ' ';
    s += std::to_string(support_[p]);
  }
  s += "}:[";
  std::size_t printed = 0;
  for (std::size_t idx = 0; idx < rows_.size(); ++idx) {
    if (!rows_[idx]) continue;
    if (printed == max_tuples) {
      s += "..";
      break;
    }
    s += '(';
    std::size_t rest = idx;
    for (std::size_t p = 0; p < support_.size(); ++p) {
      if (p) s += ' ';
      s += std::to_string(rest % static_cast<std::size_t>(base_));
      rest /= static_cast<std::size_t>(base_);
    }
    s += ')';
    ++printed;
  }
  s += ']';
  return s;
}

BaseSpace::BaseSpace(FiniteTopology topology, Limits limits)
    : topology_(std::move(topology)), limits_(limits) {
  if (topology_.points() < 1) throw InputError("base must have at least one point");
}

void BaseSpace::check_base(const CylinderElement& x) const {
  if (x.base() != points()) throw InputError("element belongs to a different base");
}

CylinderElement BaseSpace::zero() const {
  return CylinderElement::canonical(points(), {}, {false});
}

CylinderElement BaseSpace::one() const {
  return CylinderElement::canonical(points(), {}, {true});
}

CylinderElement BaseSpace::diagonal(int i, int j) const {
  if (i == j) return one();
  const int n = points();
  std::vector<int> support = {std::min(i, j), std::max(i, j)};
  std::vector<bool> rows(power(n, 2), false);
  for (int u = 0; u < n; ++u) rows[static_cast<std::size_t>(u) * (1 + n)] = true;
  return CylinderElement::canonical(n, std::move(support), std::move(rows));
}

CylinderElement BaseSpace::coord_eq(int c, int value) const {
  const int n = points();
  if (value < 0 || value >= n) throw InputError("coordinate value out of base range");
  std::vector<bool> rows(static_cast<std::size_t>(n), false);
  rows[static_cast<std::size_t>(value)] = true;
  return CylinderElement::canonical(n, {c}, std::move(rows));
}

CylinderElement BaseSpace::element(std::vector<int> support,
                                   const std::vector<std::vector<int>>& tuples) const {
  if (static_cast<int>(support.size()) > limits_.max_support)
    throw ResourceLimitError("support exceeds the configured limit");
  return CylinderElement::from_tuples(points(), std::move(support), tuples);
}

CylinderElement BaseSpace::complement(const CylinderElement& x) const {
  check_base(x);
  std::vector<bool> rows = x.rows();
  rows.flip();
  return CylinderElement::canonical(points(), x.support(), std::move(rows));
}

namespace {

// Positions of src coordinates inside the merged support.
std::vector<std::size_t> embed_positions(const std::vector<int>& src,
                                         const std::vector<int>& merged) {
  std::vector<std::size_t> pos(src.size());
  for (std::size_t p = 0; p < src.size(); ++p)
    pos[p] = static_cast<std::size_t>(
        std::lower_bound(merged.begin(), merged.end(), src[p]) - merged.begin());
  return pos;
}

}  // namespace

CylinderElement BaseSpace::meet(const CylinderElement& x, const CylinderElement& y) const {
  check_base(x);
  check_base(y);
  const int n = points();
  std::vector<int> merged;
  std::set_union(x.support().begin(), x.support().end(), y.support().begin(), y.support().end(),
                 std::back_inserter(merged));
  if (static_cast<int>(merged.size()) > limits_.max_support)
    throw ResourceLimitError("meet support " + std::to_string(merged.size()) +
                             " exceeds the configured limit");
  const std::size_t total = power(n, merged.size());
  if (total > limits_.max_rows) throw ResourceLimitError("row table exceeds the configured limit");

  auto xpos = embed_positions(x.support(), merged);
  auto ypos = embed_positions(y.support(), merged);
  std::vector<std::size_t> pows(merged.size());
  for (std::size_t p = 0; p < merged.size(); ++p) pows[p] = power(n, p);

  std::vector<bool> rows(total, false);
  std::vector<int> digits(merged.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t xi = 0, yi = 0, pw = 1;
    for (std::size_t p = 0; p < x.support().size(); ++p, pw *= n)
      xi += static_cast<std::size_t>(digits[xpos[p]]) * pw;
    pw = 1;
    for (std::size_t p = 0; p < y.support().size(); ++p, pw *= n)
      yi += static_cast<std::size_t>(digits[ypos[p]]) * pw;
    rows[idx] = x.rows()[xi] && y.rows()[yi];
    for (std::size_t p = 0; p < merged.size(); ++p) {  // increment mixed-radix counter
      if (++digits[p] < n) break;
      digits[p] = 0;
    }
  }
  return CylinderElement::canonical(n, std::move(merged), std::move(rows));
}

CylinderElement BaseSpace::join(const CylinderElement& x, const CylinderElement& y) const {
  return complement(meet(complement(x), complement(y)));
}

CylinderElement BaseSpace::cylindrify(int i, const CylinderElement& x) const {
  check_base(x);
  auto it = std::find(x.support().begin(), x.support().end(), i);
  if (it == x.support().end()) return x;
  const int n = points();
  const std::size_t p = static_cast<std::size_t>(it - x.support().begin());
  const std::size_t pow_p = power(n, p);

  std::vector<int> support;
  for (int c : x.support())
    if (c != i) support.push_back(c);
  std::vector<bool> rows(x.rows().size() / static_cast<std::size_t>(n), false);
  for (std::size_t new_idx = 0; new_idx < rows.size(); ++new_idx) {
    const std::size_t low = new_idx % pow_p;
    const std::size_t high = new_idx / pow_p;
    const std::size_t old_base = low + high * pow_p * static_cast<std::size_t>(n);
    bool any = false;
    for (int d = 0; d < n && !any; ++d)
      any = x.rows()[old_base + static_cast<std::size_t>(d) * pow_p];
    rows[new_idx] = any;
  }
  return CylinderElement::canonical(n, std::move(support), std::move(rows));
}

CylinderElement BaseSpace::dual_cylindrify(int i, const CylinderElement& x) const {
  return complement(cylindrify(i, complement(x)));
}

CylinderElement BaseSpace::substitute(const FiniteTransformation& tau,
                                      const CylinderElement& x) const {
  check_base(x);
  const int n = points();
  std::vector<int> image;
  for (int c : x.support()) image.push_back(tau(c));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());

  auto target_pos = [&](int c) {
    return static_cast<std::size_t>(std::lower_bound(image.begin(), image.end(), tau(c)) -
                                    image.begin());
  };
  std::vector<std::size_t> pos(x.support().size());
  for (std::size_t p = 0; p < x.support().size(); ++p) pos[p] = target_pos(x.support()[p]);

  std::vector<std::size_t> pows(image.size());
  for (std::size_t q = 0; q < image.size(); ++q) pows[q] = power(n, q);

  const std::size_t total = power(n, image.size());
  std::vector<bool> rows(total, false);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t old_idx = 0, pw = 1;
    for (std::size_t p = 0; p < x.support().size(); ++p, pw *= n)
      old_idx += static_cast<std::size_t>(digit_at(idx, pows[pos[p]], n)) * pw;
    rows[idx] = x.rows()[old_idx];
  }
  return CylinderElement::canonical(n, std::move(image), std::move(rows));
}

CylinderElement BaseSpace::interior(int k, const CylinderElement& x) const {
  check_base(x);
  const int n = points();
  std::vector<int> ext = x.support();
  if (!std::binary_search(ext.begin(), ext.end(), k)) {
    ext.insert(std::lower_bound(ext.begin(), ext.end(), k), k);
  }
  if (static_cast<int>(ext.size()) > limits_.max_support)
    throw ResourceLimitError("interior support exceeds the configured limit");
  const std::size_t total = power(n, ext.size());
  if (total > limits_.max_rows) throw ResourceLimitError("row table exceeds the configured limit");

  const std::size_t p = static_cast<std::size_t>(
      std::lower_bound(ext.begin(), ext.end(), k) - ext.begin());
  const std::size_t pow_p = power(n, p);
  std::vector<std::size_t> pows(ext.size());
  for (std::size_t q = 0; q < ext.size(); ++q) pows[q] = power(n, q);
  auto xpos = embed_positions(x.support(), ext);

  auto x_bit = [&](std::size_t ext_idx) {
    std::size_t old_idx = 0, pw = 1;
    for (std::size_t q = 0; q < x.support().size(); ++q, pw *= n)
      old_idx += static_cast<std::size_t>(digit_at(ext_idx, pows[xpos[q]], n)) * pw;
    return static_cast<bool>(x.rows()[old_idx]);
  };

  std::vector<bool> rows(total, false);
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (digit_at(idx, pow_p, n) != 0) continue;
    std::uint32_t fiber = 0;
    for (int u = 0; u < n; ++u)
      if (x_bit(idx + static_cast<std::size_t>(u) * pow_p)) fiber |= (1u << u);
    const std::uint32_t opened = topology_.interior_of(fiber);
    for (int u = 0; u < n; ++u)
      rows[idx + static_cast<std::size_t>(u) * pow_p] = (opened >> u) & 1u;
  }
  return CylinderElement::canonical(n, std::move(ext), std::move(rows));
}

bool BaseSpace::leq(const CylinderElement& x, const CylinderElement& y) const {
  return meet(x, complement(y)).is_zero();
}

}  // namespace tca
