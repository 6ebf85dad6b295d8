#include "citygen/Pathfinding.hpp"

#include <algorithm>
#include <climits>
#include <queue>

namespace citygen {

namespace {

inline int Idx(int x, int z, int w) { return z * w + x; }

void Reconstruct(int goalIdx, int startIdx, int w, const std::vector<int>& cameFrom,
                 std::vector<Point>& out)
{
  out.clear();
  int cur = goalIdx;
  while (cur != -1) {
    out.push_back(Point{cur % w, cur / w});
    if (cur == startIdx) break;
    cur = cameFrom[static_cast<std::size_t>(cur)];
  }
  std::reverse(out.begin(), out.end());
}

}  // namespace

std::optional<std::vector<Point>> AStarGrid(int width, int depth, Point start, Point goal,
                                            const CellCost& enterCost)
{
  if (start.x < 0 || start.x >= width || start.z < 0 || start.z >= depth) return std::nullopt;
  if (goal.x < 0 || goal.x >= width || goal.z < 0 || goal.z >= depth) return std::nullopt;
  if (enterCost(goal.x, goal.z) < 0.0) return std::nullopt;

  const std::size_t n = static_cast<std::size_t>(width) * depth;
  const int startIdx = Idx(start.x, start.z, width);
  const int goalIdx = Idx(goal.x, goal.z, width);

  constexpr double kInf = 1e300;
  std::vector<double> gScore(n, kInf);
  std::vector<int> cameFrom(n, -1);

  struct Node {
    int idx;
    double f;
    double g;
  };
  struct Cmp {
    bool operator()(const Node& a, const Node& b) const
    {
      if (a.f != b.f) return a.f > b.f;
      if (a.g != b.g) return a.g > b.g;
      return a.idx > b.idx;
    }
  };
  std::priority_queue<Node, std::vector<Node>, Cmp> open;

  auto heuristic = [&](int idx) {
    return static_cast<double>(ManhattanDist(Point{idx % width, idx / width}, goal));
  };

  gScore[static_cast<std::size_t>(startIdx)] = 0.0;
  open.push(Node{startIdx, heuristic(startIdx), 0.0});

  while (!open.empty()) {
    const Node cur = open.top();
    open.pop();
    if (cur.g != gScore[static_cast<std::size_t>(cur.idx)]) continue;  // stale
    if (cur.idx == goalIdx) {
      std::vector<Point> path;
      Reconstruct(goalIdx, startIdx, width, cameFrom, path);
      return path;
    }
    const int cx = cur.idx % width;
    const int cz = cur.idx / width;
    for (const auto& dir : kDir4) {
      const int nx = cx + dir[0];
      const int nz = cz + dir[1];
      if (nx < 0 || nx >= width || nz < 0 || nz >= depth) continue;
      const double step = enterCost(nx, nz);
      if (step < 0.0) continue;
      const int nidx = Idx(nx, nz, width);
      const double g = cur.g + step;
      if (g < gScore[static_cast<std::size_t>(nidx)]) {
        gScore[static_cast<std::size_t>(nidx)] = g;
        cameFrom[static_cast<std::size_t>(nidx)] = cur.idx;
        open.push(Node{nidx, g + heuristic(nidx), g});
      }
    }
  }
  return std::nullopt;
}

int AStarDistance(int width, int depth, Point start, Point goal,
                  const std::function<bool(int, int)>& passable)
{
  auto path = AStarGrid(width, depth, start, goal, [&](int x, int z) {
    return passable(x, z) ? 1.0 : -1.0;
  });
  if (!path) return -1;
  return static_cast<int>(path->size()) - 1;
}

IntMap BfsDistance(int width, int depth, const std::vector<Point>& sources)
{
  IntMap dist(width, depth, INT_MAX);
  std::queue<Point> q;
  for (const Point& p : sources) {
    if (p.x < 0 || p.x >= width || p.z < 0 || p.z >= depth) continue;
    if (dist.at(p.x, p.z) == 0) continue;
    dist.at(p.x, p.z) = 0;
    q.push(p);
  }
  while (!q.empty()) {
    const Point p = q.front();
    q.pop();
    const int d = dist.at(p.x, p.z);
    for (const auto& dir : kDir4) {
      const int nx = p.x + dir[0];
      const int nz = p.z + dir[1];
      if (nx < 0 || nx >= width || nz < 0 || nz >= depth) continue;
      if (dist.at(nx, nz) <= d + 1) continue;
      dist.at(nx, nz) = d + 1;
      q.push(Point{nx, nz});
    }
  }
  return dist;
}

}  // namespace citygen
