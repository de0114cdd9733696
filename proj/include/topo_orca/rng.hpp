// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace topo_orca {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream ids for deriving independent per-episode RNG streams.
/// Every stream seed is a pure function of (master seed, episode, stream id),
/// so episodes can run on any worker in any order with identical results.
enum class RngStream : std::uint64_t {
  scenario = 1,
  starts = 2,
  goals = 3,
};

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t episode,
                                 RngStream stream) {
  return splitmix64(splitmix64(splitmix64(master) ^ episode) ^
                    static_cast<std::uint64_t>(stream));
}

/// Minimal deterministic generator (splitmix64 sequence). Unlike std::
/// distributions, every draw is bit-identical across platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, n). Lemire multiply-shift; n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace topo_orca
