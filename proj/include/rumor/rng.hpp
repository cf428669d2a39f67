#pragma once

#include <cmath>
#include <cstdint>

namespace rumor {

// splitmix64 (Steele/Lea/Flood). Used to expand seeds and to hash
// (master, index) tuples into independent stream seeds.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

// xoshiro256++ (Blackman/Vigna). All simulation randomness flows through
// this generator; it is specified bit-for-bit, so a fixed seed reproduces a
// run on any platform and with any compiler.
class Xoshiro256PlusPlus {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256PlusPlus(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in (0,1): 53-bit resolution, offset by half an ulp so that both
  // log(u) and log1p(-u) stay finite.
  double uniform01() {
    return (static_cast<double>(operator()() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Exponential waiting time with the given rate (> 0).
  double exponential(double rate) { return -std::log(uniform01()) / rate; }

  // Unbiased integer in [0, n), n >= 1 (Lemire's multiply-with-rejection).
  std::uint64_t uniform_below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(operator()()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(operator()()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

// Seed for replica `index` of an ensemble keyed by `master`. Pure hash, so
// replica streams do not depend on thread scheduling or launch order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 sm(master + 0x9e3779b97f4a7c15ull * (index + 1));
  sm.next();
  return sm.next();
}

// Seed of one elementary Poisson process of the graphical construction,
// keyed by (kind, src, dst); generation order becomes irrelevant.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t kind,
                                        std::uint64_t src, std::uint64_t dst) {
  SplitMix64 sm(master);
  std::uint64_t h = sm.next() ^ (kind + 0x9e3779b97f4a7c15ull);
  h = SplitMix64(h).next() ^ (src + 0xbf58476d1ce4e5b9ull);
  h = SplitMix64(h).next() ^ (dst + 0x94d049bb133111ebull);
  return SplitMix64(h).next();
}

}  // namespace rumor
