#include "citygen/Rng.hpp"

namespace citygen {

std::vector<std::size_t> Rng::sampleIndices(std::size_t n, std::size_t k)
{
  if (k > n) k = n;
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(nextBelow(n - i));
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

std::uint64_t Fnv1a64(std::string_view s)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t Mix64(std::uint64_t x)
{
  std::uint64_t z = x + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t StreamSeed(std::uint64_t master, std::string_view stream)
{
  return Mix64(master ^ Fnv1a64(stream));
}

std::uint64_t HashCoords(std::uint64_t seed, std::int64_t x, std::int64_t z)
{
  std::uint64_t h = seed;
  h = Mix64(h ^ static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull);
  h = Mix64(h ^ static_cast<std::uint64_t>(z) * 0xC2B2AE3D27D4EB4Full);
  return h;
}

}  // namespace citygen
