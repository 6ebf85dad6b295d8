#include "citygen/FeatureMap.hpp"

namespace citygen {

PrefixSum2D::PrefixSum2D(const BoolMap& m) : PrefixSum2D(m.width(), m.depth(), m.cells()) {}

PrefixSum2D::PrefixSum2D(int width, int depth, const std::vector<std::uint8_t>& cells)
    : width_(width), depth_(depth), table_(static_cast<std::size_t>(width + 1) * (depth + 1), 0)
{
  for (int z = 0; z < depth_; ++z) {
    long long rowSum = 0;
    for (int x = 0; x < width_; ++x) {
      rowSum += cells[static_cast<std::size_t>(z) * width_ + x];
      table_[static_cast<std::size_t>(z + 1) * (width_ + 1) + (x + 1)] =
          table_[static_cast<std::size_t>(z) * (width_ + 1) + (x + 1)] + rowSum;
    }
  }
}

}  // namespace citygen
