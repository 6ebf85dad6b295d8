#pragma once

#include "citygen/Error.hpp"

#include <cstdint>
#include <vector>

namespace citygen {

// Dense 2D raster aligned to the build area. One value per column.
template <typename T>
class FeatureMap {
public:
  FeatureMap() = default;
  FeatureMap(int width, int depth, T fill = T{})
      : width_(width), depth_(depth), cells_(static_cast<std::size_t>(width) * depth, fill)
  {
  }

  int width() const { return width_; }
  int depth() const { return depth_; }
  bool inBounds(int x, int z) const { return x >= 0 && x < width_ && z >= 0 && z < depth_; }

  T at(int x, int z) const { return cells_[index(x, z)]; }
  T& at(int x, int z) { return cells_[index(x, z)]; }

  void fill(T v) { std::fill(cells_.begin(), cells_.end(), v); }

  const std::vector<T>& cells() const { return cells_; }
  std::vector<T>& cells() { return cells_; }

  friend bool operator==(const FeatureMap& a, const FeatureMap& b)
  {
    return a.width_ == b.width_ && a.depth_ == b.depth_ && a.cells_ == b.cells_;
  }

private:
  std::size_t index(int x, int z) const
  {
    if (!inBounds(x, z)) throw BoundsError("feature map access out of bounds");
    return static_cast<std::size_t>(z) * width_ + x;
  }

  int width_ = 0;
  int depth_ = 0;
  std::vector<T> cells_;
};

using BoolMap = FeatureMap<std::uint8_t>;
using IntMap = FeatureMap<int>;
using RealMap = FeatureMap<double>;

// Inclusive-exclusive prefix sums for O(1) rectangle queries during candidate
// scans. sum(x0,z0,x1,z1) covers the inclusive cell range.
class PrefixSum2D {
public:
  PrefixSum2D() = default;
  explicit PrefixSum2D(const BoolMap& m);
  PrefixSum2D(int width, int depth, const std::vector<std::uint8_t>& cells);

  long long sum(int x0, int z0, int x1, int z1) const
  {
    return acc(x1 + 1, z1 + 1) - acc(x0, z1 + 1) - acc(x1 + 1, z0) + acc(x0, z0);
  }

private:
  long long acc(int x, int z) const { return table_[static_cast<std::size_t>(z) * (width_ + 1) + x]; }

  int width_ = 0;
  int depth_ = 0;
  std::vector<long long> table_;
};

}  // namespace citygen
