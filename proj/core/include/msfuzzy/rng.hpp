#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace msfuzzy {

// Deterministic, splittable random source.
//
// Streams are xoshiro256++ generators whose state is seeded through
// SplitMix64. Sub-streams are derived by mixing one or more 64-bit counters
// into the root seed, so replication r of a run with master seed s always
// sees the same stream no matter how work is scheduled across threads.
// These two algorithms are fixed implementation constants of the project;
// changing either changes every simulated dataset.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = split_mix64(x);
  }

  // Derive an independent child stream from this seed and counters.
  static Rng derive(std::uint64_t seed, std::uint64_t c1, std::uint64_t c2 = 0) {
    return Rng(mix(seed, c1, c2));
  }

  // Fold counters into a child seed (for APIs that take a plain seed).
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t c1,
                           std::uint64_t c2 = 0) {
    std::uint64_t x = seed;
    std::uint64_t a = split_mix64(x);
    x ^= c1 * 0x9e3779b97f4a7c15ULL;
    a ^= split_mix64(x);
    x ^= c2 * 0xbf58476d1ce4e5b9ULL;
    return a ^ split_mix64(x);
  }

  std::uint64_t next_u64() {
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

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Index drawn from an unnormalized nonnegative weight vector.
  int discrete(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform() * total;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      u -= weights[i];
      if (u < 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
  static constexpr std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  static std::uint64_t split_mix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4];
};

} // namespace msfuzzy
