#pragma once

#include <cassert>
#include <cstdint>
#include <string_view>

namespace colorfix {

// Deterministic PRNG used everywhere randomness is consumed.
//
// xoshiro256++ seeded through splitmix64.  We roll our own instead of using
// <random> engines + distributions because the exact byte stream is part of
// the reproducibility contract (identical seed => identical transcript and
// coloring), and std::uniform_int_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
  }

  std::uint64_t seed() const { return seed_; }

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

  // Unbiased uniform draw from {0, ..., n-1} (rejection sampling).
  std::uint64_t below(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t min = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = next();
      if (x >= min) return x % n;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Named sub-stream derivation: seeds for "recolor", "completion", "lab", ...
  // are all derived from one master seed so modules never share a stream.
  // derive(seed, label) = splitmix64 applied to (seed XOR fnv1a64(label)).
  static std::uint64_t derive(std::uint64_t seed, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a offset basis
    for (unsigned char ch : label) {
      h ^= ch;
      h *= 0x100000001b3ull;
    }
    std::uint64_t s = seed ^ h;
    return splitmix64(s);
  }

  // Numbered variant, e.g. derive(seed, "retry", attempt).
  static std::uint64_t derive(std::uint64_t seed, std::string_view label,
                              std::uint64_t index) {
    std::uint64_t s = derive(seed, label) ^ (0x9e3779b97f4a7c15ull * (index + 1));
    return splitmix64(s);
  }

  Rng stream(std::string_view label) const { return Rng(derive(seed_, label)); }
  Rng stream(std::string_view label, std::uint64_t index) const {
    return Rng(derive(seed_, label, index));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4];
  std::uint64_t seed_;
};

}  // namespace colorfix
