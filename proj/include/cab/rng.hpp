#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace cab {

// SplitMix64 finalizer (Steele et al. / Vigna constants). Together with
// mix_seed below this is the documented seed-derivation scheme: every
// replication, simulation run and per-episode substream is a pure function
// of (master_seed, policy index, replication index [, checkpoint index]).
inline constexpr std::uint64_t kSplitMixGamma = 0x9e3779b97f4a7c15ull;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += kSplitMixGamma;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Stateless combiner used for all seed derivation in this project.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b + kSplitMixGamma));
}

// Seed h(master, policy_index, replication) for one replication of one policy.
inline std::uint64_t episode_seed(std::uint64_t master, std::uint64_t policy_index,
                                  std::uint64_t replication) {
  return mix_seed(mix_seed(master, 0x706f6cull ^ policy_index), replication);
}

// Independent substreams within one episode.
enum class Substream : std::uint64_t { Types = 1, Rewards = 2, Policy = 3 };

// Deterministic RNG wrapper. The raw generator is mt19937_64; all real-valued
// draws are produced by explicit arithmetic on the 64-bit output so the byte
// stream of results does not depend on the standard library's distribution
// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // [0, 1)
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Standard normal via Box-Muller; two uniforms per draw, no cached spare.
  double normal() {
    const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;  // (0,1]
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925287 * u2);
  }

 private:
  std::mt19937_64 gen_;
};

inline Rng substream_rng(std::uint64_t seed, Substream s) {
  return Rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
}

}  // namespace cab
