#include "citygen/Hull.hpp"

#include <algorithm>

namespace citygen {

namespace {

// Twice the signed area of triangle (o, a, b); exact in 64-bit for our grids.
long long Cross(Point o, Point a, Point b)
{
  return static_cast<long long>(a.x - o.x) * (b.z - o.z) -
         static_cast<long long>(a.z - o.z) * (b.x - o.x);
}

}  // namespace

std::vector<Point> ConvexHull(std::vector<Point> points)
{
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t n = points.size();
  if (n <= 2) return points;

  std::vector<Point> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper
    while (k >= lower && Cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  if (hull.size() == 2 && hull[0] == hull[1]) hull.pop_back();
  return hull;
}

bool PointInPolygon(const std::vector<Point>& polygon, Point p)
{
  const std::size_t n = polygon.size();
  if (n == 0) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = polygon[j];
    const Point b = polygon[i];
    // On-edge counts as inside.
    if (Cross(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
        std::min(a.z, b.z) <= p.z && p.z <= std::max(a.z, b.z)) {
      return true;
    }
    if ((a.z > p.z) != (b.z > p.z)) {
      const double t = static_cast<double>(p.z - a.z) / (b.z - a.z);
      const double xCross = a.x + t * (b.x - a.x);
      if (p.x < xCross) inside = !inside;
    }
  }
  return inside;
}

}  // namespace citygen
