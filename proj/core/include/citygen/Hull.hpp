#pragma once

#include "citygen/Geometry.hpp"

#include <vector>

namespace citygen {

// Monotone-chain convex hull on integer coordinates, exact arithmetic.
// Returns hull vertices counter-clockwise, collinear points dropped.
// Degenerate inputs (< 3 distinct points, or all collinear) return the
// extreme points only (size <= 2).
std::vector<Point> ConvexHull(std::vector<Point> points);

// Point-in-polygon (boundary counts as inside) for a simple polygon.
bool PointInPolygon(const std::vector<Point>& polygon, Point p);

}  // namespace citygen
