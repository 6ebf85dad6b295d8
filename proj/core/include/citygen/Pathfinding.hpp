#pragma once

#include "citygen/FeatureMap.hpp"
#include "citygen/Geometry.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace citygen {

// Per-cell step cost for grid A*. Return a negative value to forbid a cell.
using CellCost = std::function<double(int x, int z)>;

// Weighted A* on the 4-connected grid. Deterministic: ties in the open set
// break on (f, g, index). Returns the cell path including both endpoints, or
// nullopt when the goal is unreachable.
std::optional<std::vector<Point>> AStarGrid(int width, int depth, Point start, Point goal,
                                            const CellCost& enterCost);

// Shortest-path cell count over an arbitrary passable predicate (unit cost);
// used for on-network road distances. Returns -1 when unreachable.
int AStarDistance(int width, int depth, Point start, Point goal,
                  const std::function<bool(int, int)>& passable);

// Multi-source BFS distance field (4-neighbour). Unreached cells get INT_MAX.
IntMap BfsDistance(int width, int depth, const std::vector<Point>& sources);

}  // namespace citygen
