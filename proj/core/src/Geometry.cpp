#include "citygen/Geometry.hpp"

#include <cstdlib>

namespace citygen {

std::vector<Point> LineCells(Point a, Point b)
{
  std::vector<Point> out;
  int x = a.x, z = a.z;
  const int dx = std::abs(b.x - a.x), dz = std::abs(b.z - a.z);
  const int sx = a.x < b.x ? 1 : -1;
  const int sz = a.z < b.z ? 1 : -1;
  int err = dx - dz;
  while (true) {
    out.push_back(Point{x, z});
    if (x == b.x && z == b.z) break;
    const int e2 = 2 * err;
    if (e2 > -dz) {
      err -= dz;
      x += sx;
    }
    if (e2 < dx) {
      err += dx;
      z += sz;
    }
  }
  return out;
}

}  // namespace citygen
