#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace citygen {

// splitmix64, the project-wide PRNG. The generator is pinned by name and
// version so that event logs stay reproducible across builds of this
// implementation: citygen-rng-v1 = splitmix64 with the classic constants.
class Rng {
public:
  Rng() = default;
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next()
  {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be > 0. Multiply-shift reduction.
  std::uint64_t nextBelow(std::uint64_t n)
  {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * static_cast<unsigned __int128>(n)) >> 64);
  }

  // Uniform integer in [lo, hi], inclusive.
  int rangeInt(int lo, int hi)
  {
    if (hi <= lo) return lo;
    return lo + static_cast<int>(nextBelow(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Uniform double in [0, 1).
  double nextDouble() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return nextDouble() < p; }

  std::uint64_t state() const { return state_; }
  void setState(std::uint64_t s) { state_ = s; }

  // Partial Fisher-Yates: draws k distinct indices from [0, n) in draw order.
  std::vector<std::size_t> sampleIndices(std::size_t n, std::size_t k);

private:
  std::uint64_t state_ = 0;
};

// FNV-1a over bytes; used to key named RNG sub-streams and coordinate hashes.
std::uint64_t Fnv1a64(std::string_view s);

// Stateless 64-bit mix (splitmix64 finalizer).
std::uint64_t Mix64(std::uint64_t x);

// Derives the seed of a named sub-stream from a master seed. All randomness
// in a pipeline run flows from one master seed through these streams.
std::uint64_t StreamSeed(std::uint64_t master, std::string_view stream);

// Deterministic per-coordinate hash for terrain noise.
std::uint64_t HashCoords(std::uint64_t seed, std::int64_t x, std::int64_t z);

}  // namespace citygen
