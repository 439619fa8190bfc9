#ifndef FAIRSHARE_RNG_HPP_
#define FAIRSHARE_RNG_HPP_

#include <cstdint>

namespace fairshare {

// splitmix64, used for seeding and for deriving substream keys.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a deterministic substream key from a base seed and two labels.
// Identical (seed, a, b) always gives the same key, on every platform.
inline std::uint64_t substream_key(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b) {
  std::uint64_t s = seed;
  std::uint64_t k = splitmix64_next(s);
  s ^= a * 0xd1342543de82ef95ULL;
  k ^= splitmix64_next(s);
  s ^= b * 0xaf251af3b0f025b5ULL;
  k ^= splitmix64_next(s);
  return k;
}

// xoshiro256++ (Blackman & Vigna). Fixed algorithm rather than a standard
// library engine so that streams are reproducible across implementations.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; realized as 1 - u with u on [0, 1).
  double uniform_open01() { return 1.0 - uniform01(); }

  // Uniform integer on [0, bound), bound >= 1. Rejection keeps it unbiased.
  std::uint64_t uniform_int(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace fairshare

#endif  // FAIRSHARE_RNG_HPP_
