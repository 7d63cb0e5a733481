#ifndef TCA_RNG_HPP
#define TCA_RNG_HPP

#include <cstdint>

namespace tca {

// splitmix64: used both as a stream generator and to derive independent
// sub-seeds.  Kept hand-rolled so that reports are byte-identical across
// standard library implementations (std:: distributions are not portable).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t s = seed ^ (0x632be59bd9b4e019ULL * (salt + 1));
  return splitmix64(s);
}

class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() { return splitmix64(state_); }

  /// Uniform value in [0, bound), bound >= 1.  Rejection sampling keeps it
  /// exactly uniform and platform-independent.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

  int range(int lo, int hi) {  // inclusive lo, exclusive hi
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo)));
  }

  bool chance(int num, int den) { return below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num); }

  Rng fork(std::uint64_t salt) { return Rng(mix_seed(state_, salt)); }

  std::uint64_t state() const { return state_; }

private:
  std::uint64_t state_;
};

}  // namespace tca

#endif
