#pragma once

#include <cstdint>
#include <random>

namespace qifs {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seedable, platform-independent generator. mt19937_64 output is fully
/// specified by the standard; uniforms are built from raw 64-bit draws
/// instead of std distributions (whose mappings are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Independent stream for deterministic parallelism: stream seeds are the
  /// (index+1)-th splitmix64 outputs of the master seed.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t out = 0;
    for (std::uint64_t i = 0; i <= index; ++i) out = splitmix64_next(s);
    return Rng(out);
  }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (pair cached).
  double normal();

 private:
  std::mt19937_64 eng_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

/// Inverse-CDF selection over (p_0..p_{k-1}); ties resolved in ascending
/// index order. Values below `clamp` are treated as exactly 0.
int pick_index(const double* probs, int k, double u, double clamp = 1e-15);

}  // namespace qifs
