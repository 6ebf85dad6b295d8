#include "doctest.h"

#include "citygen/Hull.hpp"
#include "citygen/Pathfinding.hpp"
#include "citygen/Rng.hpp"
#include "citygen/SavitzkyGolay.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace citygen;

namespace {

// Independent hull oracle: gift wrapping (Jarvis march) on integer points.
std::vector<Point> JarvisHull(std::vector<Point> pts)
{
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;

  auto cross = [](Point o, Point a, Point b) {
    return static_cast<long long>(a.x - o.x) * (b.z - o.z) -
           static_cast<long long>(a.z - o.z) * (b.x - o.x);
  };
  // Leftmost-lowest start.
  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] < pts[start]) start = i;

  std::vector<Point> hull;
  std::size_t cur = start;
  do {
    hull.push_back(pts[cur]);
    std::size_t next = (cur + 1) % pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const long long c = cross(pts[cur], pts[next], pts[i]);
      if (c < 0) next = i;  // pts[i] is more clockwise
      else if (c == 0) {
        // Collinear: take the farthest so inner points never enter the hull.
        const long long dn = static_cast<long long>(pts[next].x - pts[cur].x) *
                                 (pts[next].x - pts[cur].x) +
                             static_cast<long long>(pts[next].z - pts[cur].z) *
                                 (pts[next].z - pts[cur].z);
        const long long di = static_cast<long long>(pts[i].x - pts[cur].x) *
                                 (pts[i].x - pts[cur].x) +
                             static_cast<long long>(pts[i].z - pts[cur].z) *
                                 (pts[i].z - pts[cur].z);
        if (di > dn) next = i;
      }
    }
    cur = next;
  } while (cur != start && hull.size() <= pts.size());

  // All collinear input collapses to the two extremes.
  if (hull.size() == 2 && pts.size() > 2) return hull;
  return hull;
}

std::set<std::pair<int, int>> AsSet(const std::vector<Point>& pts)
{
  std::set<std::pair<int, int>> out;
  for (const Point& p : pts) out.insert({p.x, p.z});
  return out;
}

// Independent coefficient oracle: least-squares fit on a [-1,1]-scaled
// abscissa (the centre evaluation is basis-invariant), normal equations
// inverted with naive long-double Gauss-Jordan.
std::vector<double> SgOracle(int window, int order)
{
  const int half = window / 2;
  const int terms = order + 1;
  const long double scale = half > 0 ? 1.0L / half : 1.0L;
  std::vector<std::vector<long double>> ata(terms, std::vector<long double>(2 * terms, 0.0L));
  for (int j = 0; j < terms; ++j) {
    for (int k = 0; k < terms; ++k) {
      long double s = 0.0L;
      for (int i = -half; i <= half; ++i)
        s += std::pow(static_cast<long double>(i) * scale, j + k);
      ata[j][k] = s;
    }
    for (int k = 0; k < terms; ++k) ata[j][terms + k] = j == k ? 1.0L : 0.0L;
  }
  // Gauss-Jordan inversion.
  for (int col = 0; col < terms; ++col) {
    int pivot = col;
    for (int row = col + 1; row < terms; ++row)
      if (std::fabs(static_cast<double>(ata[row][col])) >
          std::fabs(static_cast<double>(ata[pivot][col])))
        pivot = row;
    std::swap(ata[col], ata[pivot]);
    const long double div = ata[col][col];
    for (int k = 0; k < 2 * terms; ++k) ata[col][k] /= div;
    for (int row = 0; row < terms; ++row) {
      if (row == col) continue;
      const long double f = ata[row][col];
      for (int k = 0; k < 2 * terms; ++k) ata[row][k] -= f * ata[col][k];
    }
  }
  std::vector<double> h(window, 0.0);
  for (int i = -half; i <= half; ++i) {
    long double v = 0.0L;
    for (int j = 0; j < terms; ++j)
      v += ata[0][terms + j] * std::pow(static_cast<long double>(i) * scale, j);
    h[i + half] = static_cast<double>(v);
  }
  return h;
}

}  // namespace

TEST_CASE("convex hull matches gift wrapping on random integer point sets")
{
  Rng rng(77);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 3 + static_cast<int>(rng.nextBelow(40));
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i)
      pts.push_back(Point{static_cast<int>(rng.nextBelow(30)),
                          static_cast<int>(rng.nextBelow(30))});
    const auto ours = ConvexHull(pts);
    const auto oracle = JarvisHull(pts);
    REQUIRE(AsSet(ours) == AsSet(oracle));
  }
}

TEST_CASE("hull handles degenerate inputs")
{
  CHECK(ConvexHull({}).empty());
  CHECK(ConvexHull({{3, 4}}).size() == 1);
  CHECK(ConvexHull({{3, 4}, {3, 4}}).size() == 1);
  const auto collinear = ConvexHull({{0, 0}, {2, 2}, {4, 4}, {1, 1}});
  CHECK(collinear.size() == 2);  // extremes only
  CHECK(AsSet(collinear) == AsSet({{0, 0}, {4, 4}}));
}

TEST_CASE("point in polygon includes the boundary")
{
  const std::vector<Point> square = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  CHECK(PointInPolygon(square, {5, 5}));
  CHECK(PointInPolygon(square, {0, 0}));
  CHECK(PointInPolygon(square, {10, 5}));
  CHECK(!PointInPolygon(square, {11, 5}));
  CHECK(!PointInPolygon(square, {-1, -1}));
}

TEST_CASE("savitzky-golay (11,3) matches the classic kernel")
{
  const auto h = SavitzkyGolayCoefficients(11, 3);
  const double expected[11] = {-36, 9, 44, 69, 84, 89, 84, 69, 44, 9, -36};
  REQUIRE(h.size() == 11);
  for (int i = 0; i < 11; ++i) CHECK(h[i] == doctest::Approx(expected[i] / 429.0).epsilon(1e-12));
}

TEST_CASE("savitzky-golay coefficients match the least-squares oracle")
{
  Rng rng(31);
  int cases = 0;
  while (cases < 120) {
    const int window = 5 + 2 * static_cast<int>(rng.nextBelow(9));  // 5..21 odd
    const int order = 1 + static_cast<int>(rng.nextBelow(4));       // 1..4
    if (order >= window) continue;
    ++cases;
    const auto ours = SavitzkyGolayCoefficients(window, order);
    const auto oracle = SgOracle(window, order);
    double maxAbs = 0.0;
    for (const double v : oracle) maxAbs = std::max(maxAbs, std::fabs(v));
    for (int i = 0; i < window; ++i) {
      const double denom = std::max(maxAbs, std::fabs(oracle[i]));
      REQUIRE(std::fabs(ours[i] - oracle[i]) / denom < 1e-9);
    }
  }
}

TEST_CASE("filter preserves constants and linear ramps")
{
  const auto h = SavitzkyGolayCoefficients(11, 3);
  double sum = 0.0, moment = 0.0;
  for (int i = 0; i < 11; ++i) {
    sum += h[i];
    moment += h[i] * (i - 5);
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(moment == doctest::Approx(0.0).epsilon(1e-12));

  // Circular smoothing of a constant signal is exactly the constant.
  const std::vector<double> constant(40, 7.5);
  for (const double v : SavitzkyGolaySmoothCircular(constant, 11, 3))
    CHECK(v == doctest::Approx(7.5).epsilon(1e-12));
}

TEST_CASE("a +5 spike smooths to small consecutive steps")
{
  std::vector<double> signal(48, 10.0);
  signal[20] += 5.0;
  const auto smooth = SavitzkyGolaySmoothCircular(signal, 11, 3);
  for (std::size_t i = 0; i < smooth.size(); ++i) {
    const double prev = smooth[(i + smooth.size() - 1) % smooth.size()];
    CHECK(std::fabs(smooth[i] - prev) <= 1.0);
  }
}

TEST_CASE("grid A* finds shortest paths and respects blocks")
{
  // 10x10, wall along x=5 except a door at z=7.
  const auto cost = [](int x, int z) -> double {
    if (x == 5 && z != 7) return -1.0;
    return 1.0;
  };
  const auto path = AStarGrid(10, 10, {1, 1}, {8, 1}, cost);
  REQUIRE(path.has_value());
  CHECK(path->front() == Point{1, 1});
  CHECK(path->back() == Point{8, 1});
  // Must detour through (5,7): length = manhattan + 2*detour.
  CHECK(static_cast<int>(path->size()) - 1 == 7 + 2 * 6);
  for (std::size_t i = 1; i < path->size(); ++i)
    CHECK(ManhattanDist((*path)[i - 1], (*path)[i]) == 1);

  // Fully walled goal is unreachable.
  const auto blockedCost = [](int x, int z) -> double { return x == 5 ? -1.0 : 1.0; };
  CHECK(!AStarGrid(10, 10, {1, 1}, {8, 1}, blockedCost).has_value());
}

TEST_CASE("bfs distance field")
{
  const IntMap dist = BfsDistance(8, 8, {{0, 0}});
  CHECK(dist.at(0, 0) == 0);
  CHECK(dist.at(3, 4) == 7);
  CHECK(dist.at(7, 7) == 14);
}
