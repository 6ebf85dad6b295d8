#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace citygen {

struct Point {
  int x = 0;
  int z = 0;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.z == b.z; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b)
  {
    if (a.x != b.x) return a.x < b.x;
    return a.z < b.z;
  }
};

// Axis-aligned footprint on the horizontal grid. w/d are in cells, inclusive
// extent is [x, x+w-1] x [z, z+d-1].
struct Rect {
  int x = 0;
  int z = 0;
  int w = 0;
  int d = 0;

  int x1() const { return x + w - 1; }
  int z1() const { return z + d - 1; }
  bool contains(int px, int pz) const { return px >= x && px <= x1() && pz >= z && pz <= z1(); }
  bool intersects(const Rect& o) const
  {
    return x <= o.x1() && o.x <= x1() && z <= o.z1() && o.z <= z1();
  }
  Point center() const { return Point{x + w / 2, z + d / 2}; }
  double centerX() const { return x + (w - 1) * 0.5; }
  double centerZ() const { return z + (d - 1) * 0.5; }

  Rect dilated(int r) const { return Rect{x - r, z - r, w + 2 * r, d + 2 * r}; }

  friend bool operator==(const Rect& a, const Rect& b)
  {
    return a.x == b.x && a.z == b.z && a.w == b.w && a.d == b.d;
  }
};

inline int ManhattanDist(Point a, Point b) { return std::abs(a.x - b.x) + std::abs(a.z - b.z); }

inline int ChebyshevDist(Point a, Point b)
{
  return std::max(std::abs(a.x - b.x), std::abs(a.z - b.z));
}

inline double EuclideanDist(double ax, double az, double bx, double bz)
{
  const double dx = ax - bx;
  const double dz = az - bz;
  return std::sqrt(dx * dx + dz * dz);
}

// Chebyshev distance from a point to a rect (0 if inside).
inline int RectPointDist(const Rect& r, Point p)
{
  const int dx = std::max({r.x - p.x, 0, p.x - r.x1()});
  const int dz = std::max({r.z - p.z, 0, p.z - r.z1()});
  return std::max(dx, dz);
}

// 4-neighborhood, fixed deterministic order: +x, -x, +z, -z.
inline constexpr int kDir4[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

// 8-neighborhood, row-major scan order.
inline constexpr int kDir8[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                    {0, 1},   {1, -1}, {1, 0},  {1, 1}};

// Bresenham line between two cells, endpoints included.
std::vector<Point> LineCells(Point a, Point b);

}  // namespace citygen
