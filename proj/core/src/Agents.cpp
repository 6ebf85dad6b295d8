#include "citygen/Agents.hpp"

#include "citygen/Hull.hpp"
#include "citygen/Pathfinding.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace citygen {

namespace {

constexpr double kSlopeCostWeight = 4.0;  // A* weight = 1 + 4*slope
constexpr double kWaterWallPenalty = 8.0;
constexpr int kMinBranchLength = 4;
constexpr int kBranchTargetLength = 12;
constexpr int kExtendLength = 8;
constexpr double kConnectThreshold = 1.5;
constexpr int kMaxBridgeSpan = 24;
constexpr int kBridgeAttachMax = 12;
constexpr int kWallMargin = 6;
constexpr int kWallWidth = 3;

const char* kBehaviorNames[] = {"generic", "road_split", "road_connect", "road_bridge",
                                "wall",    "church"};

// Cells too close to a plot for a road or wall to pass through.
BoolMap PlotClearance(const Blueprint& bp, int radius)
{
  const int w = bp.width(), d = bp.depth();
  BoolMap out(w, d, 0);
  for (const Plot& p : bp.plots()) {
    const Rect r = p.rect.dilated(radius);
    for (int x = std::max(0, r.x); x <= std::min(w - 1, r.x1()); ++x)
      for (int z = std::max(0, r.z); z <= std::min(d - 1, r.z1()); ++z) out.at(x, z) = 1;
  }
  return out;
}

constexpr int kRoadBorderMargin = 2;

// Standard road-builder step cost; negative means blocked.
CellCost RoadBuildCost(const Blueprint& bp, const BoolMap& plotClear, Point exempt,
                       bool allowExistingRoads)
{
  return [&bp, &plotClear, exempt, allowExistingRoads](int x, int z) -> double {
    if (x == exempt.x && z == exempt.z) return 1.0;
    if (x < kRoadBorderMargin || x >= bp.width() - kRoadBorderMargin ||
        z < kRoadBorderMargin || z >= bp.depth() - kRoadBorderMargin)
      return -1.0;
    if (bp.terrain().water.at(x, z)) return -1.0;
    if (bp.terrain().structure.at(x, z)) return -1.0;
    if (bp.wallMap().at(x, z)) return -1.0;
    if (plotClear.at(x, z)) return -1.0;
    if (bp.roadMap().at(x, z)) {
      if (!allowExistingRoads) return -1.0;
      return 0.5;  // reuse is cheaper than building
    }
    return 1.0 + kSlopeCostWeight * bp.terrain().slope.at(x, z);
  };
}

std::vector<Point> AllRoadCells(const Blueprint& bp)
{
  std::vector<Point> cells;
  for (const RoadSegment& s : bp.roads().segments)
    for (const Point& c : s.cells) cells.push_back(c);
  return cells;
}

double MeanSlope(const Blueprint& bp, const Rect& r)
{
  double s = 0.0;
  for (int x = r.x; x <= r.x1(); ++x)
    for (int z = r.z; z <= r.z1(); ++z) s += bp.terrain().slope.at(x, z);
  return s / (static_cast<double>(r.w) * r.d);
}

double MinDistToKind(const Blueprint& bp, PlotKind kind, const std::string& variant,
                     const Rect& r)
{
  const double diag = std::sqrt(static_cast<double>(bp.width()) * bp.width() +
                                static_cast<double>(bp.depth()) * bp.depth());
  double best = diag;
  for (const Plot& p : bp.plots()) {
    if (p.kind != kind) continue;
    if (!variant.empty() && p.variant != variant) continue;
    best = std::min(best, EuclideanDist(r.centerX(), r.centerZ(), p.rect.centerX(),
                                        p.rect.centerZ()));
  }
  return best;
}

double WallCentroidFitness(const Blueprint& bp, const Candidate& c)
{
  // Central placement: close to the walled-in centroid when a wall exists,
  // otherwise close to the road network.
  double cx = 0.0, cz = 0.0;
  long long n = 0;
  for (int x = 0; x < bp.width(); ++x)
    for (int z = 0; z < bp.depth(); ++z)
      if (bp.walledInMap().at(x, z)) {
        cx += x;
        cz += z;
        ++n;
      }
  if (n > 0) {
    return -EuclideanDist(c.rect.centerX(), c.rect.centerZ(), cx / n, cz / n);
  }
  const IntMap& dist = bp.roadDistanceField();
  const Point center = c.rect.center();
  const int rd = dist.at(center.x, center.z);
  return rd == INT_MAX ? -1e9 : -static_cast<double>(rd);
}

double CustomFitnessValue(const std::string& name, const Blueprint& bp, const Candidate& c)
{
  if (name.empty() || name == "none") return 0.0;
  if (name == "watchtower") return WatchtowerFitness(bp, c);
  if (name == "church_central") return WallCentroidFitness(bp, c);
  throw ConfigError("unknown custom fitness hook: " + name);
}

double AgentFitness(const AgentSpec& spec, const Blueprint& bp, const Candidate& c)
{
  double f = spec.slopeWeight * -MeanSlope(bp, c.rect);
  if (spec.ownKindDistance && spec.ownKindDistance->mode == OwnKindDistance::Mode::Weight)
    f += spec.ownKindDistance->value * MinDistToKind(bp, spec.kind, spec.variant, c.rect);
  f += CustomFitnessValue(spec.customFitness, bp, c);
  return f;
}

// Applies hard own-kind cutoffs before sampling.
std::vector<Candidate> FilterOwnKind(const AgentSpec& spec, const Blueprint& bp,
                                     std::vector<Candidate> candidates)
{
  if (!spec.ownKindDistance || spec.ownKindDistance->mode == OwnKindDistance::Mode::Weight)
    return candidates;
  const bool minMode = spec.ownKindDistance->mode == OwnKindDistance::Mode::MinCutoff;
  const double cutoff = spec.ownKindDistance->value;
  std::vector<Candidate> out;
  out.reserve(candidates.size());
  for (const Candidate& c : candidates) {
    const double dist = MinDistToKind(bp, spec.kind, spec.variant, c.rect);
    if (minMode ? dist >= cutoff : dist <= cutoff) out.push_back(c);
  }
  return out;
}

ConstraintSet ConstraintsFor(const AgentSpec& spec, int w, int d)
{
  ConstraintSet c;
  c.w = w;
  c.d = d;
  c.maxSlope = spec.maxSlope;
  c.waterOnly = spec.waterOnly;
  c.insideWallOnly = spec.insideWallOnly;
  c.outsideWallOnly = spec.outsideWallOnly;
  c.maxRoadDistance = spec.maxRoadDistance;
  return c;
}

AgentOutcome Skip(const AgentSpec& spec, const std::string& why)
{
  return AgentOutcome{spec.name, Outcome::Skip, why};
}

AgentOutcome Success(const AgentSpec& spec, const std::string& what)
{
  return AgentOutcome{spec.name, Outcome::Success, what};
}

}  // namespace

const char* AgentBehaviorName(AgentBehavior b) { return kBehaviorNames[static_cast<int>(b)]; }

bool ParseAgentBehavior(const std::string& name, AgentBehavior* out)
{
  for (int i = 0; i <= static_cast<int>(AgentBehavior::Church); ++i) {
    if (name == kBehaviorNames[i]) {
      *out = static_cast<AgentBehavior>(i);
      return true;
    }
  }
  return false;
}

void AgentSpec::validate() const
{
  if (activationInterval < 1) throw ConfigError(name + ": activation_interval must be >= 1");
  if (insideWallOnly && outsideWallOnly)
    throw ConfigError(name + ": inside_wall_only and outside_wall_only are mutually exclusive");
  if (footprintMinW < 1 || footprintMinD < 1 || footprintMaxW < footprintMinW ||
      footprintMaxD < footprintMinD)
    throw ConfigError(name + ": bad footprint range");
  if (sampleSize < 1) throw ConfigError(name + ": sample_size must be >= 1");
}

double WatchtowerFitness(const Blueprint& bp, const Candidate& c, double alpha, double beta)
{
  const TerrainMaps& t = bp.terrain();
  int minH = t.height.at(0, 0), maxH = minH;
  for (int x = 0; x < bp.width(); ++x)
    for (int z = 0; z < bp.depth(); ++z) {
      minH = std::min(minH, t.height.at(x, z));
      maxH = std::max(maxH, t.height.at(x, z));
    }
  const Point center = c.rect.center();
  const double normHeight =
      maxH > minH ? static_cast<double>(t.height.at(center.x, center.z) - minH) / (maxH - minH)
                  : 0.0;

  const double diag = std::sqrt(static_cast<double>(bp.width()) * bp.width() +
                                static_cast<double>(bp.depth()) * bp.depth());
  double minDist = -1.0;
  for (const Plot& p : bp.plots()) {
    if (p.kind != PlotKind::Watchtower) continue;
    const double dist =
        EuclideanDist(c.rect.centerX(), c.rect.centerZ(), p.rect.centerX(), p.rect.centerZ());
    if (minDist < 0.0 || dist < minDist) minDist = dist;
  }
  const double normDist = minDist < 0.0 ? 1.0 : std::min(1.0, minDist / diag);
  return alpha * normHeight + beta * normDist;
}

AgentOutcome GenericPlotAct(const AgentSpec& spec, Blueprint& bp)
{
  int w = spec.footprintMinW + (spec.footprintMaxW > spec.footprintMinW
                                    ? bp.rng().rangeInt(0, spec.footprintMaxW - spec.footprintMinW)
                                    : 0);
  int d = spec.footprintMinD + (spec.footprintMaxD > spec.footprintMinD
                                    ? bp.rng().rangeInt(0, spec.footprintMaxD - spec.footprintMinD)
                                    : 0);
  if (spec.randomOrientation && bp.rng().chance(0.5)) std::swap(w, d);

  std::vector<Candidate> candidates = bp.findCandidates(ConstraintsFor(spec, w, d));
  candidates = FilterOwnKind(spec, bp, std::move(candidates));
  if (candidates.empty()) return Skip(spec, "no candidate locations");

  const auto fitness = [&](const Candidate& c) { return AgentFitness(spec, bp, c); };
  const auto chosen = bp.selectPlacement(candidates, fitness, spec.sampleSize);
  if (!chosen) return Skip(spec, "no candidate locations");
  const int id = bp.addPlot(spec.kind, spec.variant, chosen->rect, spec.name);
  return Success(spec, "plot " + std::to_string(id));
}

AgentOutcome RoadSplitAct(const AgentSpec& spec, Blueprint& bp)
{
  bool longEnough = false;
  for (const RoadSegment& s : bp.roads().segments)
    if (static_cast<int>(s.cells.size()) >= 2 * kMinBranchLength) longEnough = true;
  if (!longEnough) return Skip(spec, "no road long enough to split");

  const std::vector<Point> roadCells = AllRoadCells(bp);
  const BoolMap plotClear = PlotClearance(bp, 1);

  for (int pick = 0; pick < 4; ++pick) {
    const Point at = roadCells[bp.rng().nextBelow(roadCells.size())];

    // Local road direction from any 4-neighbour on the road; branch runs
    // perpendicular to it.
    Point dir{1, 0};
    for (const auto& dd : kDir4) {
      const int nx = at.x + dd[0], nz = at.z + dd[1];
      if (nx < 0 || nx >= bp.width() || nz < 0 || nz >= bp.depth()) continue;
      if (bp.roadMap().at(nx, nz)) {
        dir = Point{dd[0], dd[1]};
        break;
      }
    }
    Point perp{-dir.z, dir.x};
    if (bp.rng().chance(0.5)) perp = Point{-perp.x, -perp.z};

    const CellCost cost = RoadBuildCost(bp, plotClear, at, false);
    for (int attempt = 0; attempt < 2; ++attempt) {
      const Point sign = attempt == 0 ? perp : Point{-perp.x, -perp.z};
      for (int len = kBranchTargetLength; len >= kMinBranchLength; len /= 2) {
        const Point target{std::clamp(at.x + sign.x * len, 0, bp.width() - 1),
                           std::clamp(at.z + sign.z * len, 0, bp.depth() - 1)};
        if (target == at) break;
        const auto path = AStarGrid(bp.width(), bp.depth(), at, target, cost);
        if (!path || static_cast<int>(path->size()) < kMinBranchLength) continue;
        const int segId = bp.addRoadSegment(*path, false, "split", spec.name);
        return Success(spec, "segment " + std::to_string(segId));
      }
    }
  }
  return Skip(spec, "no viable branch");
}

AgentOutcome RoadConnectAct(const AgentSpec& spec, Blueprint& bp, int nPairs)
{
  std::vector<Point> roadCells = AllRoadCells(bp);
  std::sort(roadCells.begin(), roadCells.end());
  roadCells.erase(std::unique(roadCells.begin(), roadCells.end()), roadCells.end());
  if (roadCells.size() < 2) return Skip(spec, "not enough road cells");

  const BoolMap plotClear = PlotClearance(bp, 1);
  const auto onRoad = [&bp](int x, int z) { return bp.roadMap().at(x, z) != 0; };

  double bestRatio = 0.0;
  std::vector<Point> bestPath;
  for (int i = 0; i < nPairs; ++i) {
    const Point a = roadCells[bp.rng().nextBelow(roadCells.size())];
    const Point b = roadCells[bp.rng().nextBelow(roadCells.size())];
    if (a == b) continue;
    const int networkDist = AStarDistance(bp.width(), bp.depth(), a, b, onRoad);
    if (networkDist < 0) continue;
    const CellCost cost = RoadBuildCost(bp, plotClear, a, true);
    const auto direct = AStarGrid(bp.width(), bp.depth(), a, b, cost);
    if (!direct || direct->size() < 2) continue;
    const double ratio =
        static_cast<double>(networkDist) / static_cast<double>(direct->size() - 1);
    if (ratio > bestRatio) {
      bestRatio = ratio;
      bestPath = *direct;
    }
  }
  if (bestRatio < kConnectThreshold) return Skip(spec, "no shortcut beats the threshold");
  const int segId = bp.addRoadSegment(bestPath, false, "connect", spec.name);
  return Success(spec, "segment " + std::to_string(segId));
}

AgentOutcome BridgeAct(const AgentSpec& spec, Blueprint& bp)
{
  const int w = bp.width(), d = bp.depth();
  const TerrainMaps& t = bp.terrain();
  const IntMap& roadDist = bp.roadDistanceField();
  const BoolMap plotClear = PlotClearance(bp, 1);

  struct BridgeCandidate {
    int span = INT_MAX;
    int attach = INT_MAX;
    std::vector<Point> path;
  };
  BridgeCandidate best;

  auto blockedLand = [&](int x, int z) {
    return bp.plotMap().at(x, z) || bp.wallMap().at(x, z) || t.structure.at(x, z) ||
           plotClear.at(x, z);
  };

  for (int x = 0; x < w; ++x) {
    for (int z = 0; z < d; ++z) {
      if (t.water.at(x, z) || blockedLand(x, z)) continue;
      if (roadDist.at(x, z) > kBridgeAttachMax) continue;
      const Point shore{x, z};
      for (const auto& dir : kDir4) {
        int cx = x + dir[0], cz = z + dir[1];
        if (cx < 0 || cx >= w || cz < 0 || cz >= d || !t.water.at(cx, cz)) continue;
        // March across the water until the far shore.
        std::vector<Point> crossing;
        bool landed = false;
        Point landing{0, 0};
        while (cx >= 0 && cx < w && cz >= 0 && cz < d &&
               static_cast<int>(crossing.size()) <= kMaxBridgeSpan) {
          if (!t.water.at(cx, cz)) {
            landed = true;
            landing = Point{cx, cz};
            break;
          }
          if (bp.roadMap().at(cx, cz) || bp.plotMap().at(cx, cz)) break;  // taken
          crossing.push_back(Point{cx, cz});
          cx += dir[0];
          cz += dir[1];
        }
        if (!landed || crossing.empty()) continue;
        if (static_cast<int>(crossing.size()) > kMaxBridgeSpan) continue;
        if (blockedLand(landing.x, landing.z)) continue;
        const int span = static_cast<int>(crossing.size());
        const int attach = roadDist.at(x, z);
        if (span < best.span || (span == best.span && attach < best.attach)) {
          // Attach the near shore to the network over land.
          std::vector<Point> full;
          if (attach > 0) {
            const auto access = bp.nearestRoadCell(Rect{shore.x, shore.z, 1, 1});
            if (!access) continue;
            const CellCost cost = RoadBuildCost(bp, plotClear, *access, true);
            const auto approach = AStarGrid(w, d, *access, shore, cost);
            if (!approach || static_cast<int>(approach->size()) - 1 > 2 * kBridgeAttachMax)
              continue;
            full = *approach;
          } else {
            full.push_back(shore);
          }
          full.insert(full.end(), crossing.begin(), crossing.end());
          full.push_back(landing);
          best = BridgeCandidate{span, attach, std::move(full)};
        }
      }
    }
  }
  if (best.path.empty()) return Skip(spec, "no crossing within bridge length");
  const int segId = bp.addRoadSegment(best.path, true, "bridge", spec.name);
  return Success(spec, "bridge segment " + std::to_string(segId) + " span " +
                           std::to_string(best.span));
}

AgentOutcome RoadExtendAct(RoadExtender& ext, Blueprint& bp)
{
  AgentSpec pseudo;
  pseudo.name = "road_extend_" + std::to_string(ext.segmentId);
  const RoadSegment* seg = nullptr;
  for (const RoadSegment& s : bp.roads().segments)
    if (s.id == ext.segmentId) seg = &s;
  if (!seg || seg->cells.size() < 2) return Skip(pseudo, "segment gone or too short");

  const BoolMap plotClear = PlotClearance(bp, 1);

  auto tryEnd = [&](bool front) -> std::optional<std::vector<Point>> {
    const Point end = front ? seg->cells.front() : seg->cells.back();
    const Point prev = front ? seg->cells[1] : seg->cells[seg->cells.size() - 2];
    const Point dir{end.x - prev.x, end.z - prev.z};
    const Point perp{-dir.z, dir.x};
    const CellCost cost = RoadBuildCost(bp, plotClear, end, false);
    // Straight ahead first, then curving targets so built-up ends can still
    // grow around obstacles.
    const int lateralFirst = bp.rng().chance(0.5) ? 1 : -1;
    const int offsets[5][2] = {{kExtendLength, 0},
                               {kExtendLength, 3 * lateralFirst},
                               {kExtendLength, -3 * lateralFirst},
                               {5, 2 * lateralFirst},
                               {4, 0}};
    for (const auto& off : offsets) {
      const Point target{
          std::clamp(end.x + dir.x * off[0] + perp.x * off[1], 0, bp.width() - 1),
          std::clamp(end.z + dir.z * off[0] + perp.z * off[1], 0, bp.depth() - 1)};
      if (target == end) continue;
      const auto path = AStarGrid(bp.width(), bp.depth(), end, target, cost);
      if (path && path->size() >= 3) return path;
    }
    return std::nullopt;
  };

  const bool frontFirst = bp.rng().chance(0.5);
  for (int attempt = 0; attempt < 2; ++attempt) {
    const bool front = attempt == 0 ? frontFirst : !frontFirst;
    if (auto path = tryEnd(front)) {
      bp.extendRoadSegment(ext.segmentId, *path, front, pseudo.name);
      return Success(pseudo, "extended");
    }
  }

  // Permanently enclosed roads retire their extender.
  auto endBlocked = [&](Point end) {
    for (const auto& dd : kDir4) {
      const int nx = end.x + dd[0], nz = end.z + dd[1];
      if (nx < 0 || nx >= bp.width() || nz < 0 || nz >= bp.depth()) continue;
      if (!bp.roadMap().at(nx, nz) && !bp.plotMap().at(nx, nz) && !bp.wallMap().at(nx, nz) &&
          !bp.terrain().water.at(nx, nz) && !plotClear.at(nx, nz))
        return false;
    }
    return true;
  };
  if (endBlocked(seg->cells.front()) && endBlocked(seg->cells.back())) ext.dead = true;
  return Skip(pseudo, "both ends blocked");
}

AgentOutcome WallAgentAct(const AgentSpec& spec, Blueprint& bp)
{
  if (bp.wall().placedStep) return Skip(spec, "wall already placed");
  if (bp.plots().size() < 3) return Skip(spec, "not enough plots to enclose");

  const int w = bp.width(), d = bp.depth();

  std::vector<Point> corners;
  for (const Plot& p : bp.plots()) {
    corners.push_back(Point{p.rect.x, p.rect.z});
    corners.push_back(Point{p.rect.x1(), p.rect.z});
    corners.push_back(Point{p.rect.x, p.rect.z1()});
    corners.push_back(Point{p.rect.x1(), p.rect.z1()});
  }
  std::vector<Point> hull = ConvexHull(corners);

  std::vector<Point> loop;
  if (hull.size() < 3) {
    // Collinear plots: fall back to a loop around the bounding box.
    int x0 = INT_MAX, z0 = INT_MAX, x1 = INT_MIN, z1 = INT_MIN;
    for (const Plot& p : bp.plots()) {
      x0 = std::min(x0, p.rect.x);
      z0 = std::min(z0, p.rect.z);
      x1 = std::max(x1, p.rect.x1());
      z1 = std::max(z1, p.rect.z1());
    }
    x0 = std::max(kWallWidth, x0 - kWallMargin);
    z0 = std::max(kWallWidth, z0 - kWallMargin);
    x1 = std::min(w - 1 - kWallWidth, x1 + kWallMargin);
    z1 = std::min(d - 1 - kWallWidth, z1 + kWallMargin);
    if (x0 >= x1 || z0 >= z1) return Skip(spec, "no room for a wall");
    for (int x = x0; x <= x1; ++x) loop.push_back(Point{x, z0});
    for (int z = z0 + 1; z <= z1; ++z) loop.push_back(Point{x1, z});
    for (int x = x1 - 1; x >= x0; --x) loop.push_back(Point{x, z1});
    for (int z = z1 - 1; z > z0; --z) loop.push_back(Point{x0, z});
  } else {
    // Push hull vertices outward from the centroid by the wall margin.
    double cx = 0.0, cz = 0.0;
    for (const Point& p : hull) {
      cx += p.x;
      cz += p.z;
    }
    cx /= hull.size();
    cz /= hull.size();

    std::vector<Point> pushed;
    for (const Point& p : hull) {
      const double vx = p.x - cx, vz = p.z - cz;
      const double len = std::max(1e-9, std::sqrt(vx * vx + vz * vz));
      Point q{static_cast<int>(std::lround(p.x + vx / len * kWallMargin)),
              static_cast<int>(std::lround(p.z + vz / len * kWallMargin))};
      q.x = std::clamp(q.x, kWallWidth / 2 + 1, w - 2 - kWallWidth / 2);
      q.z = std::clamp(q.z, kWallWidth / 2 + 1, d - 2 - kWallWidth / 2);
      pushed.push_back(q);
    }

    // The widened band must clear every plot, and the path must stay out of
    // the hull so the enclosure is airtight.
    const BoolMap plotClear = PlotClearance(bp, 1 + kWallWidth / 2);
    BoolMap hullBlock(w, d, 0);
    for (int x = 0; x < w; ++x)
      for (int z = 0; z < d; ++z)
        if (PointInPolygon(hull, Point{x, z})) hullBlock.at(x, z) = 1;
    BoolMap hullDilated(w, d, 0);
    for (int x = 0; x < w; ++x)
      for (int z = 0; z < d; ++z) {
        bool b = false;
        for (int dx = -1; dx <= 1 && !b; ++dx)
          for (int dz = -1; dz <= 1 && !b; ++dz) {
            const int nx = x + dx, nz = z + dz;
            if (nx >= 0 && nx < w && nz >= 0 && nz < d && hullBlock.at(nx, nz)) b = true;
          }
        if (b) hullDilated.at(x, z) = 1;
      }

    const CellCost cost = [&](int x, int z) -> double {
      if (hullDilated.at(x, z)) return -1.0;
      if (plotClear.at(x, z)) return -1.0;
      if (bp.terrain().structure.at(x, z)) return -1.0;
      double c = 1.0 + kSlopeCostWeight * bp.terrain().slope.at(x, z);
      if (bp.terrain().water.at(x, z)) c += kWaterWallPenalty;
      return c;
    };

    // A clamped or crowded anchor slides to the nearest passable cell.
    auto freeAnchor = [&](Point p) -> std::optional<Point> {
      if (cost(p.x, p.z) >= 0.0) return p;
      for (int radius = 1; radius <= 10; ++radius) {
        for (int dx = -radius; dx <= radius; ++dx) {
          for (int dz = -radius; dz <= radius; ++dz) {
            if (std::max(std::abs(dx), std::abs(dz)) != radius) continue;
            const int x = p.x + dx, z = p.z + dz;
            if (x < 1 || x >= w - 1 || z < 1 || z >= d - 1) continue;
            if (cost(x, z) >= 0.0) return Point{x, z};
          }
        }
      }
      return std::nullopt;
    };
    for (Point& p : pushed) {
      const auto freed = freeAnchor(p);
      if (!freed) return Skip(spec, "wall anchor blocked");
      p = *freed;
    }
    // Anchor sliding can create duplicates; drop them to keep legs nontrivial.
    std::vector<Point> anchors;
    for (const Point& p : pushed)
      if (anchors.empty() || !(anchors.back() == p)) anchors.push_back(p);
    while (anchors.size() > 1 && anchors.front() == anchors.back()) anchors.pop_back();
    if (anchors.size() < 3) return Skip(spec, "wall anchors degenerate");

    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const Point a = anchors[i];
      const Point b = anchors[(i + 1) % anchors.size()];
      const auto leg = AStarGrid(w, d, a, b, cost);
      if (!leg) return Skip(spec, "no wall path between anchors");
      for (std::size_t k = (i == 0 ? 0 : 1); k < leg->size(); ++k) loop.push_back((*leg)[k]);
    }
    if (!loop.empty() && loop.front() == loop.back()) loop.pop_back();
  }

  if (loop.size() < 8) return Skip(spec, "wall loop degenerate");
  WallBand band;
  band.path = std::move(loop);
  band.cellWidth.assign(band.path.size(), kWallWidth);
  bp.placeWall(std::move(band), spec.name);
  return Success(spec, "wall of " + std::to_string(bp.wall().path.size()) + " cells");
}

AgentOutcome ChurchAgentAct(const AgentSpec& spec, Blueprint& bp)
{
  if (bp.countPlots(PlotKind::Church) > 0) return Skip(spec, "church exists");

  const int w = spec.footprintMinW, d = spec.footprintMinD;
  ConstraintSet c = ConstraintsFor(spec, w, d);
  const bool walled = bp.wall().placedStep.has_value();
  if (walled) {
    c.insideWallOnly = true;
    c.maxRoadDistance.reset();
  }

  const auto fitness = [&](const Candidate& cand) {
    return spec.slopeWeight * -MeanSlope(bp, cand.rect) + WallCentroidFitness(bp, cand);
  };

  std::vector<Candidate> candidates = bp.findCandidates(c);
  if (!candidates.empty()) {
    const auto chosen = bp.selectPlacement(candidates, fitness, spec.sampleSize);
    const int id = bp.addPlot(PlotKind::Church, spec.variant, chosen->rect, spec.name);
    return Success(spec, "plot " + std::to_string(id));
  }

  // No room: pick the best location ignoring plots and make room for it.
  c.ignorePlotCollision = true;
  candidates = bp.findCandidates(c);
  if (candidates.empty()) return Skip(spec, "no space even with bulldozing");
  const auto chosen = bp.selectPlacement(candidates, fitness, 2 * spec.sampleSize);
  const auto removed = bp.bulldoze(chosen->rect, spec.name, spec.criticallyImportant);
  const int id = bp.addPlot(PlotKind::Church, spec.variant, chosen->rect, spec.name);
  return Success(spec, "plot " + std::to_string(id) + " after bulldozing " +
                           std::to_string(removed.size()) + " plots");
}

AgentOutcome ActAgent(const AgentSpec& spec, Blueprint& bp)
{
  switch (spec.behavior) {
  case AgentBehavior::GenericPlot: return GenericPlotAct(spec, bp);
  case AgentBehavior::RoadSplit: return RoadSplitAct(spec, bp);
  case AgentBehavior::RoadConnect: return RoadConnectAct(spec, bp);
  case AgentBehavior::RoadBridge: return BridgeAct(spec, bp);
  case AgentBehavior::Wall: return WallAgentAct(spec, bp);
  case AgentBehavior::Church: return ChurchAgentAct(spec, bp);
  }
  return AgentOutcome{spec.name, Outcome::Error, "unknown behavior"};
}

StepReport StepBlueprint(Blueprint& bp, const std::vector<AgentSpec>& roster)
{
  StepReport report;
  const int t = bp.step();
  bp.beginStep();

  // One extend agent per road: register extenders for any segment that does
  // not have one yet (including the seed road). They act from the next step.
  {
    auto& extenders = bp.extenders();
    for (const RoadSegment& seg : bp.roads().segments) {
      bool found = false;
      for (const RoadExtender& e : extenders)
        if (e.segmentId == seg.id) found = true;
      if (!found) extenders.push_back(RoadExtender{seg.id, t, 2, false});
    }
  }

  for (const AgentSpec& spec : roster) {
    if (!spec.activeAt(t)) continue;
    if (spec.maxPlots && bp.countPlots(spec.kind, spec.variant) >= *spec.maxPlots) continue;
    AgentOutcome outcome;
    try {
      outcome = ActAgent(spec, bp);
    } catch (const std::exception& e) {
      outcome = AgentOutcome{spec.name, Outcome::Error, e.what()};
    }
    report.outcomes.push_back(std::move(outcome));
  }

  // Per-road extenders run after the roster, in registration order. Fresh
  // extenders activate from the next step, so the index loop is stable.
  auto& extenders = bp.extenders();
  for (std::size_t i = 0; i < extenders.size(); ++i) {
    RoadExtender& ext = extenders[i];
    if (ext.dead || t < ext.activationStep ||
        (t - ext.activationStep) % ext.activationInterval != 0)
      continue;
    AgentOutcome outcome;
    try {
      outcome = RoadExtendAct(ext, bp);
    } catch (const std::exception& e) {
      outcome = AgentOutcome{"road_extend_" + std::to_string(ext.segmentId), Outcome::Error,
                             e.what()};
    }
    report.outcomes.push_back(std::move(outcome));
  }
  extenders.erase(std::remove_if(extenders.begin(), extenders.end(),
                                 [](const RoadExtender& e) { return e.dead; }),
                  extenders.end());

  bp.finishStep(report);
  return report;
}

void RunBlueprint(Blueprint& bp, const std::vector<AgentSpec>& roster, int nSteps)
{
  if (nSteps < 0) throw ConfigError("n_steps must be >= 0");
  for (int i = 0; i < nSteps; ++i) StepBlueprint(bp, roster);
}

std::vector<AgentSpec> DefaultRoster(const RosterDefaults& defaults)
{
  std::vector<AgentSpec> roster;
  const int wallStep = defaults.wallStep;

  auto add = [&roster](AgentSpec spec) {
    spec.validate();
    roster.push_back(std::move(spec));
  };

  {
    AgentSpec a;
    a.name = "road_split";
    a.behavior = AgentBehavior::RoadSplit;
    a.activationInterval = 2;
    add(a);
  }
  {
    AgentSpec a;
    a.name = "road_connect";
    a.behavior = AgentBehavior::RoadConnect;
    a.activationStep = 4;
    a.activationInterval = 3;
    add(a);
  }
  {
    AgentSpec a;
    a.name = "road_bridge";
    a.behavior = AgentBehavior::RoadBridge;
    a.activationStep = 6;
    a.activationInterval = 4;
    add(a);
  }
  {
    AgentSpec a;
    a.name = "wall";
    a.behavior = AgentBehavior::Wall;
    a.activationStep = wallStep;
    add(a);
  }
  for (int i = 1; i <= 3; ++i) {
    AgentSpec a;
    a.name = "civilian_" + std::to_string(i);
    a.kind = PlotKind::CivilianGeneric;
    a.activationStep = i - 1;
    a.activationInterval = 2;
    a.footprintMinW = a.footprintMinD = 7;
    a.footprintMaxW = a.footprintMaxD = 11;
    a.maxRoadDistance = 4;
    a.maxSlope = 2.0;
    add(a);
  }
  const char* crops[] = {"wheat", "potatoes", "carrots", "beetroots", "pumpkins"};
  for (int i = 0; i < 5; ++i) {
    AgentSpec a;
    a.name = std::string("farm_") + crops[i];
    a.kind = PlotKind::Farm;
    a.variant = crops[i];
    a.outsideWallOnly = true;
    a.activationStep = 2 + i;
    a.activationInterval = 3;
    a.footprintMinW = a.footprintMinD = 7;
    a.footprintMaxW = a.footprintMaxD = 10;
    a.maxRoadDistance = 10;
    a.maxSlope = 2.0;
    add(a);
  }
  for (int i = 1; i <= 9; ++i) {
    AgentSpec a;
    a.name = "tree_" + std::to_string(i);
    a.kind = PlotKind::Tree;
    a.activationStep = wallStep + 1;  // trees fill the gaps after the wall step
    a.activationInterval = 2;
    a.footprintMinW = a.footprintMaxW = 2;
    a.footprintMinD = a.footprintMaxD = 2;
    a.maxSlope = 3.0;
    a.maxRoadDistance = 12;  // fill the gaps between structures, not the wilds
    a.ownKindDistance = OwnKindDistance{OwnKindDistance::Mode::MinCutoff, 3.0};
    a.sampleSize = 8;
    add(a);
  }
  {
    AgentSpec a;
    a.name = "boat_small";
    a.kind = PlotKind::Boat;
    a.variant = "small";
    a.waterOnly = true;
    a.activationStep = 8;
    a.activationInterval = 5;
    a.footprintMinW = a.footprintMaxW = 3;
    a.footprintMinD = a.footprintMaxD = 5;
    a.randomOrientation = true;
    a.ownKindDistance = OwnKindDistance{OwnKindDistance::Mode::MinCutoff, 8.0};
    add(a);
  }
  {
    AgentSpec a;
    a.name = "boat_large";
    a.kind = PlotKind::Boat;
    a.variant = "large";
    a.waterOnly = true;
    a.activationStep = 10;
    a.activationInterval = 8;
    a.maxPlots = 2;
    a.footprintMinW = a.footprintMaxW = 5;
    a.footprintMinD = a.footprintMaxD = 9;
    a.randomOrientation = true;
    a.ownKindDistance = OwnKindDistance{OwnKindDistance::Mode::MinCutoff, 12.0};
    add(a);
  }
  {
    AgentSpec a;
    a.name = "fishing_platform";
    a.kind = PlotKind::FishingPlatform;
    a.waterOnly = true;
    a.activationStep = 6;
    a.activationInterval = 6;
    a.footprintMinW = a.footprintMaxW = 3;
    a.footprintMinD = a.footprintMaxD = 3;
    a.maxRoadDistance = 12;
    add(a);
  }
  struct Deco {
    const char* item;
    int w, d;
    bool orient;
    int interval;
    int activation;
    int maxPlots;
    bool insideWall;
  };
  const Deco decos[] = {
      {"wheelbarrow", 1, 2, true, 7, 3, 4, false},
      {"bench", 1, 2, true, 6, 4, 6, false},
      {"well", 3, 3, false, 10, 5, 2, false},
      {"lamppost", 1, 1, false, 5, 6, 8, false},
      {"flower_bed", 2, 2, false, 7, 7, 5, false},
      {"market_stall", 2, 3, true, 8, 8, 4, false},
      {"statue", 2, 2, false, 12, 9, 2, false},
      {"woodpile", 1, 2, true, 8, 10, 4, false},
      {"cart", 2, 3, true, 9, 11, 3, false},
      {"fountain", 3, 3, false, 10, 0, 2, true},  // walled-in map dependent
      {"shrine", 2, 2, false, 12, 13, 2, false},
  };
  for (const Deco& dd : decos) {
    AgentSpec a;
    a.name = std::string("deco_") + dd.item;
    a.kind = PlotKind::Decoration;
    a.variant = dd.item;
    a.activationStep = dd.insideWall ? wallStep + 1 : dd.activation;
    a.activationInterval = dd.interval;
    a.insideWallOnly = dd.insideWall;
    a.maxPlots = dd.maxPlots;
    a.footprintMinW = a.footprintMaxW = dd.w;
    a.footprintMinD = a.footprintMaxD = dd.d;
    a.randomOrientation = dd.orient;
    a.maxRoadDistance = 3;
    a.maxSlope = 1.0;
    a.sampleSize = 8;
    add(a);
  }
  {
    AgentSpec a;
    a.name = "watchtower";
    a.kind = PlotKind::Watchtower;
    a.activationStep = wallStep + 2;  // towers go up once the wall is set
    a.activationInterval = 8;
    a.maxPlots = 4;
    a.footprintMinW = a.footprintMaxW = 5;
    a.footprintMinD = a.footprintMaxD = 5;
    a.maxRoadDistance = 14;
    a.maxSlope = 3.0;
    a.slopeWeight = 0.5;
    a.customFitness = "watchtower";
    a.ownKindDistance = OwnKindDistance{OwnKindDistance::Mode::MinCutoff, 20.0};
    add(a);
  }
  {
    AgentSpec a;
    a.name = "church";
    a.behavior = AgentBehavior::Church;
    a.kind = PlotKind::Church;
    a.activationStep = 12;
    a.activationInterval = 5;
    a.maxPlots = 1;
    a.criticallyImportant = true;
    a.footprintMinW = a.footprintMaxW = 15;
    a.footprintMinD = a.footprintMaxD = 15;
    a.maxSlope = 2.0;
    a.maxRoadDistance = 5;
    a.sampleSize = 24;
    add(a);
  }
  return roster;
}

namespace {

std::string OwnKindToString(const std::optional<OwnKindDistance>& o)
{
  if (!o) return "none";
  char buf[48];
  const char* mode = o->mode == OwnKindDistance::Mode::MinCutoff
                         ? "min"
                         : (o->mode == OwnKindDistance::Mode::MaxCutoff ? "max" : "weight");
  std::snprintf(buf, sizeof(buf), "%s:%g", mode, o->value);
  return buf;
}

std::optional<OwnKindDistance> OwnKindFromString(const std::string& s)
{
  if (s == "none" || s.empty()) return std::nullopt;
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ConfigError("bad own_kind_distance: " + s);
  const std::string mode = s.substr(0, colon);
  OwnKindDistance o;
  if (mode == "min") o.mode = OwnKindDistance::Mode::MinCutoff;
  else if (mode == "max") o.mode = OwnKindDistance::Mode::MaxCutoff;
  else if (mode == "weight") o.mode = OwnKindDistance::Mode::Weight;
  else throw ConfigError("bad own_kind_distance mode: " + mode);
  o.value = std::stod(s.substr(colon + 1));
  return o;
}

std::string Trim(std::string s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  return s;
}

}  // namespace

std::string SerializeRoster(const std::vector<AgentSpec>& roster)
{
  std::string out;
  char buf[160];
  for (const AgentSpec& a : roster) {
    out += "[agent " + a.name + "]\n";
    out += std::string("behavior = ") + AgentBehaviorName(a.behavior) + "\n";
    out += std::string("kind = ") + PlotKindName(a.kind) + "\n";
    out += "variant = " + (a.variant.empty() ? "none" : a.variant) + "\n";
    std::snprintf(buf, sizeof(buf), "activation_step = %d\n", a.activationStep);
    out += buf;
    std::snprintf(buf, sizeof(buf), "activation_interval = %d\n", a.activationInterval);
    out += buf;
    out += std::string("inside_wall_only = ") + (a.insideWallOnly ? "true" : "false") + "\n";
    out += std::string("outside_wall_only = ") + (a.outsideWallOnly ? "true" : "false") + "\n";
    out += "max_plots = " + (a.maxPlots ? std::to_string(*a.maxPlots) : "none") + "\n";
    out += "max_distance_from_roads = " +
           (a.maxRoadDistance ? std::to_string(*a.maxRoadDistance) : "none") + "\n";
    out += std::string("water_only = ") + (a.waterOnly ? "true" : "false") + "\n";
    out += std::string("critically_important = ") + (a.criticallyImportant ? "true" : "false") +
           "\n";
    out += "own_kind_distance = " + OwnKindToString(a.ownKindDistance) + "\n";
    if (a.maxSlope) {
      std::snprintf(buf, sizeof(buf), "max_slope = %g\n", *a.maxSlope);
      out += buf;
    } else {
      out += "max_slope = none\n";
    }
    std::snprintf(buf, sizeof(buf), "slope_weight = %g\n", a.slopeWeight);
    out += buf;
    out += "custom_fitness = " + (a.customFitness.empty() ? "none" : a.customFitness) + "\n";
    std::snprintf(buf, sizeof(buf), "footprint = %d..%dx%d..%d\n", a.footprintMinW,
                  a.footprintMaxW, a.footprintMinD, a.footprintMaxD);
    out += buf;
    out += std::string("random_orientation = ") + (a.randomOrientation ? "true" : "false") + "\n";
    std::snprintf(buf, sizeof(buf), "sample_size = %d\n", a.sampleSize);
    out += buf;
    out += "\n";
  }
  return out;
}

std::vector<AgentSpec> ParseRoster(const std::string& text)
{
  std::vector<AgentSpec> roster;
  AgentSpec* cur = nullptr;
  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.rfind("[agent ", 0) != 0)
        throw ConfigError("roster line " + std::to_string(lineNo) + ": bad section header");
      AgentSpec spec;
      spec.name = Trim(line.substr(7, line.size() - 8));
      if (spec.name.empty())
        throw ConfigError("roster line " + std::to_string(lineNo) + ": empty agent name");
      roster.push_back(spec);
      cur = &roster.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || !cur)
      throw ConfigError("roster line " + std::to_string(lineNo) + ": expected key = value");
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));

    if (key == "behavior") {
      if (!ParseAgentBehavior(value, &cur->behavior))
        throw ConfigError("unknown behavior: " + value);
    } else if (key == "kind") {
      if (!ParsePlotKind(value, &cur->kind)) throw ConfigError("unknown plot kind: " + value);
    } else if (key == "variant") {
      cur->variant = value == "none" ? "" : value;
    } else if (key == "activation_step") {
      cur->activationStep = std::stoi(value);
    } else if (key == "activation_interval") {
      cur->activationInterval = std::stoi(value);
    } else if (key == "inside_wall_only") {
      cur->insideWallOnly = value == "true";
    } else if (key == "outside_wall_only") {
      cur->outsideWallOnly = value == "true";
    } else if (key == "max_plots") {
      cur->maxPlots = value == "none" ? std::nullopt : std::optional<int>(std::stoi(value));
    } else if (key == "max_distance_from_roads") {
      cur->maxRoadDistance = value == "none" ? std::nullopt : std::optional<int>(std::stoi(value));
    } else if (key == "water_only") {
      cur->waterOnly = value == "true";
    } else if (key == "critically_important") {
      cur->criticallyImportant = value == "true";
    } else if (key == "own_kind_distance") {
      cur->ownKindDistance = OwnKindFromString(value);
    } else if (key == "max_slope") {
      cur->maxSlope = value == "none" ? std::nullopt : std::optional<double>(std::stod(value));
    } else if (key == "slope_weight") {
      cur->slopeWeight = std::stod(value);
    } else if (key == "custom_fitness") {
      cur->customFitness = value == "none" ? "" : value;
    } else if (key == "footprint") {
      int wMin, wMax, dMin, dMax;
      if (std::sscanf(value.c_str(), "%d..%dx%d..%d", &wMin, &wMax, &dMin, &dMax) != 4)
        throw ConfigError("bad footprint: " + value);
      cur->footprintMinW = wMin;
      cur->footprintMaxW = wMax;
      cur->footprintMinD = dMin;
      cur->footprintMaxD = dMax;
    } else if (key == "random_orientation") {
      cur->randomOrientation = value == "true";
    } else if (key == "sample_size") {
      cur->sampleSize = std::stoi(value);
    } else {
      throw ConfigError("unknown roster key: " + key);
    }
  }
  for (const AgentSpec& a : roster) a.validate();
  return roster;
}

std::vector<AgentSpec> LoadRoster(const std::string& path)
{
  std::ifstream f(path);
  if (!f) throw IoError("cannot open roster file: " + path);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return ParseRoster(text);
}

}  // namespace citygen
