#include "citygen/Blueprint.hpp"

#include "citygen/Image.hpp"
#include "citygen/Pathfinding.hpp"

#include <algorithm>
#include <climits>
#include <cstdio>
#include <fstream>
#include <map>
#include <queue>
#include <set>

namespace citygen {

namespace {

const char* kPlotKindNames[] = {
    "civilian_generic", "residential", "commercial",        "industrial",
    "church",           "watchtower",  "farm",              "tree",
    "boat",             "fishing_platform", "decoration",
};

// Plots keep off the build-area border so the wall always has a corridor.
constexpr int kPlotBorderMargin = 4;

struct Rgb {
  std::uint8_t r, g, b;
};

Rgb PlotColor(PlotKind k)
{
  switch (k) {
  case PlotKind::CivilianGeneric: return {200, 200, 200};
  case PlotKind::Residential: return {230, 160, 60};
  case PlotKind::Commercial: return {170, 60, 200};
  case PlotKind::Industrial: return {130, 130, 60};
  case PlotKind::Church: return {245, 245, 245};
  case PlotKind::Watchtower: return {170, 40, 40};
  case PlotKind::Farm: return {220, 210, 80};
  case PlotKind::Tree: return {40, 140, 50};
  case PlotKind::Boat: return {150, 95, 40};
  case PlotKind::FishingPlatform: return {90, 160, 160};
  case PlotKind::Decoration: return {235, 120, 160};
  }
  return {255, 0, 255};
}

}  // namespace

const char* PlotKindName(PlotKind k) { return kPlotKindNames[static_cast<int>(k)]; }

bool ParsePlotKind(const std::string& name, PlotKind* out)
{
  for (int i = 0; i <= static_cast<int>(PlotKind::Decoration); ++i) {
    if (name == kPlotKindNames[i]) {
      *out = static_cast<PlotKind>(i);
      return true;
    }
  }
  return false;
}

Blueprint Blueprint::init(const TerrainMaps& terrain, std::uint64_t seed, int seedRoadLength,
                          int window)
{
  Blueprint bp;
  bp.terrain_ = terrain;
  const int w = terrain.height.width();
  const int d = terrain.height.depth();
  bp.roadMap_ = BoolMap(w, d, 0);
  bp.plotMap_ = BoolMap(w, d, 0);
  bp.wallMap_ = BoolMap(w, d, 0);
  bp.walledInMap_ = BoolMap(w, d, 0);
  bp.rng_ = Rng(StreamSeed(seed, "blueprint"));

  const Point spot = FlattestSpot(terrain, window);

  // Orient the seed road along the flatter axis of the window (ties go to x).
  const int half = window / 2;
  double alongX = 0.0, alongZ = 0.0;
  for (int dx = -half; dx <= half; ++dx) {
    for (int dz = -half; dz <= half; ++dz) {
      const int x = spot.x + dx, z = spot.z + dz;
      if (x + 1 <= spot.x + half)
        alongX += std::abs(terrain.height.at(x + 1, z) - terrain.height.at(x, z));
      if (z + 1 <= spot.z + half)
        alongZ += std::abs(terrain.height.at(x, z + 1) - terrain.height.at(x, z));
    }
  }
  const bool alongXAxis = alongX <= alongZ;

  std::vector<Point> cells;
  const int start = -(seedRoadLength / 2);
  for (int i = 0; i < seedRoadLength; ++i) {
    int x = alongXAxis ? spot.x + start + i : spot.x;
    int z = alongXAxis ? spot.z : spot.z + start + i;
    x = std::clamp(x, 0, w - 1);
    z = std::clamp(z, 0, d - 1);
    if (cells.empty() || !(cells.back() == Point{x, z})) cells.push_back(Point{x, z});
  }
  bp.addRoadSegment(std::move(cells), false, "seed", "init");
  return bp;
}

int Blueprint::countPlots(PlotKind kind, const std::string& variant) const
{
  int n = 0;
  for (const Plot& p : plots_) {
    if (p.kind != kind) continue;
    if (!variant.empty() && p.variant != variant) continue;
    ++n;
  }
  return n;
}

const Plot* Blueprint::findPlot(int id) const
{
  for (const Plot& p : plots_) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

void Blueprint::rasterizePlot(const Rect& r, std::uint8_t v)
{
  for (int x = r.x; x <= r.x1(); ++x)
    for (int z = r.z; z <= r.z1(); ++z) plotMap_.at(x, z) = v;
}

void Blueprint::recomputePlotMap()
{
  plotMap_.fill(0);
  for (const Plot& p : plots_) rasterizePlot(p.rect, 1);
}

int Blueprint::addPlot(PlotKind kind, const std::string& variant, Rect rect,
                       const std::string& agent)
{
  Plot p;
  p.id = nextPlotId_++;
  p.kind = kind;
  p.variant = variant;
  p.rect = rect;
  p.anchorHeight = anchorHeightFor(rect);
  p.createdStep = step_;
  p.roadAccess = nearestRoadCell(rect);
  plots_.push_back(p);
  rasterizePlot(rect, 1);
  events_.push_back(Event{step_, agent, std::string("place:") + PlotKindName(kind), p.id, rect});
  return p.id;
}

int Blueprint::addRoadSegment(std::vector<Point> cells, bool bridge, const std::string& kindTag,
                              const std::string& agent)
{
  RoadSegment seg;
  seg.id = roads_.nextId++;
  seg.cells = std::move(cells);
  seg.bridge = bridge;
  Rect bbox{seg.cells.front().x, seg.cells.front().z, 1, 1};
  for (const Point& c : seg.cells) {
    roadMap_.at(c.x, c.z) = 1;
    const int x1 = std::max(bbox.x1(), c.x), z1 = std::max(bbox.z1(), c.z);
    bbox.x = std::min(bbox.x, c.x);
    bbox.z = std::min(bbox.z, c.z);
    bbox.w = x1 - bbox.x + 1;
    bbox.d = z1 - bbox.z + 1;
  }
  roads_.segments.push_back(seg);
  roadDistDirty_ = true;
  events_.push_back(Event{step_, agent, "road:" + kindTag, seg.id, bbox});
  return seg.id;
}

void Blueprint::extendRoadSegment(int segmentId, const std::vector<Point>& newCells, bool atFront,
                                  const std::string& agent)
{
  for (RoadSegment& s : roads_.segments) {
    if (s.id != segmentId) continue;
    Rect bbox{newCells.front().x, newCells.front().z, 1, 1};
    for (const Point& c : newCells) {
      roadMap_.at(c.x, c.z) = 1;
      const int x1 = std::max(bbox.x1(), c.x), z1 = std::max(bbox.z1(), c.z);
      bbox.x = std::min(bbox.x, c.x);
      bbox.z = std::min(bbox.z, c.z);
      bbox.w = x1 - bbox.x + 1;
      bbox.d = z1 - bbox.z + 1;
    }
    if (atFront) {
      std::vector<Point> merged(newCells.rbegin(), newCells.rend());
      merged.pop_back();  // drop duplicate junction cell
      merged.insert(merged.end(), s.cells.begin(), s.cells.end());
      s.cells = std::move(merged);
    } else {
      s.cells.insert(s.cells.end(), newCells.begin() + 1, newCells.end());
    }
    roadDistDirty_ = true;
    events_.push_back(Event{step_, agent, "road:extend", segmentId, bbox});
    return;
  }
  throw BoundsError("unknown road segment id");
}

void Blueprint::placeWall(WallBand band, const std::string& agent)
{
  band.placedStep = step_;
  wall_ = std::move(band);
  wallMap_.fill(0);
  const int w = width(), d = depth();
  for (std::size_t i = 0; i < wall_.path.size(); ++i) {
    const Point c = wall_.path[i];
    const int r = wall_.cellWidth.empty() ? 1 : wall_.cellWidth[i] / 2;
    for (int dx = -r; dx <= r; ++dx)
      for (int dz = -r; dz <= r; ++dz) {
        const int x = c.x + dx, z = c.z + dz;
        if (x < 0 || x >= w || z < 0 || z >= d) continue;
        if (plotMap_.at(x, z)) continue;  // plots clip the band, never the reverse
        wallMap_.at(x, z) = 1;
      }
  }

  // Interior = cells the outside flood cannot reach through non-wall cells.
  walledInMap_.fill(0);
  BoolMap outside(w, d, 0);
  std::queue<Point> q;
  auto push = [&](int x, int z) {
    if (x < 0 || x >= w || z < 0 || z >= d) return;
    if (outside.at(x, z) || wallMap_.at(x, z)) return;
    outside.at(x, z) = 1;
    q.push(Point{x, z});
  };
  for (int x = 0; x < w; ++x) {
    push(x, 0);
    push(x, d - 1);
  }
  for (int z = 0; z < d; ++z) {
    push(0, z);
    push(w - 1, z);
  }
  while (!q.empty()) {
    const Point p = q.front();
    q.pop();
    for (const auto& dir : kDir4) push(p.x + dir[0], p.z + dir[1]);
  }
  Rect bbox{wall_.path.front().x, wall_.path.front().z, 1, 1};
  for (const Point& c : wall_.path) {
    const int x1 = std::max(bbox.x1(), c.x), z1 = std::max(bbox.z1(), c.z);
    bbox.x = std::min(bbox.x, c.x);
    bbox.z = std::min(bbox.z, c.z);
    bbox.w = x1 - bbox.x + 1;
    bbox.d = z1 - bbox.z + 1;
  }
  for (int x = 0; x < w; ++x)
    for (int z = 0; z < d; ++z)
      if (!outside.at(x, z) && !wallMap_.at(x, z)) walledInMap_.at(x, z) = 1;
  roadDistDirty_ = true;  // road reachability semantics unchanged, but keep fields fresh
  events_.push_back(Event{step_, agent, "wall", -1, bbox});
}

std::vector<int> Blueprint::bulldoze(Rect rect, const std::string& agent, bool agentIsCritical)
{
  if (!agentIsCritical)
    throw PermissionError("agent '" + agent + "' is not critically important; bulldoze refused");
  std::vector<int> removed;
  std::vector<Plot> kept;
  kept.reserve(plots_.size());
  for (const Plot& p : plots_) {
    if (p.rect.intersects(rect)) {
      removed.push_back(p.id);
      events_.push_back(Event{step_, agent, "remove", p.id, p.rect});
    } else {
      kept.push_back(p);
    }
  }
  if (!removed.empty()) {
    plots_ = std::move(kept);
    recomputePlotMap();
  }
  return removed;
}

void Blueprint::setPlotKind(int id, PlotKind kind, const std::string& agent)
{
  if (kind != PlotKind::Residential && kind != PlotKind::Commercial &&
      kind != PlotKind::Industrial)
    throw PermissionError("plots may only differentiate into civilian types");
  for (Plot& p : plots_) {
    if (p.id != id) continue;
    if (p.kind != PlotKind::CivilianGeneric)
      throw PermissionError("only civilian_generic plots may change kind");
    p.kind = kind;
    events_.push_back(
        Event{step_, agent, std::string("convert:") + PlotKindName(kind), id, p.rect});
    return;
  }
  throw BoundsError("unknown plot id " + std::to_string(id));
}

const IntMap& Blueprint::roadDistanceField() const
{
  if (roadDistDirty_) {
    std::vector<Point> sources;
    for (const RoadSegment& s : roads_.segments)
      for (const Point& c : s.cells) sources.push_back(c);
    roadDist_ = BfsDistance(width(), depth(), sources);
    roadDistDirty_ = false;
  }
  return roadDist_;
}

std::vector<Candidate> Blueprint::findCandidates(const ConstraintSet& c) const
{
  std::vector<Candidate> out;
  const int w = width(), d = depth();
  if (c.w <= 0 || c.d <= 0 || c.w > w || c.d > d) return out;

  // Per-cell violation masks, then prefix sums make every placement O(1).
  // Roads carry a one-cell clearance margin (their realized width).
  BoolMap collide(w, d, 0);
  BoolMap waterViol(w, d, 0);
  BoolMap slopeViol(w, d, 0);
  BoolMap wallViol(w, d, 0);
  BoolMap nearRoad(w, d, 0);
  const IntMap& roadDist = roadDistanceField();
  const bool needRoadDist = c.maxRoadDistance.has_value();

  // Road ends that can still grow keep a small frontier clear of plots, so
  // buildings never box the network in.
  BoolMap frontier(w, d, 0);
  for (const RoadExtender& ext : extenders_) {
    if (ext.dead) continue;
    for (const RoadSegment& s : roads_.segments) {
      if (s.id != ext.segmentId || s.cells.empty()) continue;
      for (const Point end : {s.cells.front(), s.cells.back()}) {
        for (int dx = -3; dx <= 3; ++dx)
          for (int dz = -3; dz <= 3; ++dz) {
            const int x = end.x + dx, z = end.z + dz;
            if (x >= 0 && x < w && z >= 0 && z < d) frontier.at(x, z) = 1;
          }
      }
    }
  }

  for (int x = 0; x < w; ++x) {
    for (int z = 0; z < d; ++z) {
      bool col = wallMap_.at(x, z) || (!c.ignorePlotCollision && plotMap_.at(x, z)) ||
                 terrain_.structure.at(x, z) || frontier.at(x, z);
      if (!col) {
        for (int dx = -1; dx <= 1 && !col; ++dx)
          for (int dz = -1; dz <= 1 && !col; ++dz) {
            const int nx = x + dx, nz = z + dz;
            if (nx < 0 || nx >= w || nz < 0 || nz >= d) continue;
            if (roadMap_.at(nx, nz)) col = true;
          }
      }
      collide.at(x, z) = col ? 1 : 0;
      const bool isWater = terrain_.water.at(x, z) != 0;
      waterViol.at(x, z) = (isWater != c.waterOnly) ? 1 : 0;
      if (c.maxSlope && terrain_.slope.at(x, z) > *c.maxSlope) slopeViol.at(x, z) = 1;
      if (c.insideWallOnly && !walledInMap_.at(x, z)) wallViol.at(x, z) = 1;
      if (c.outsideWallOnly && (walledInMap_.at(x, z) || wallMap_.at(x, z))) wallViol.at(x, z) = 1;
      if (needRoadDist && roadDist.at(x, z) <= *c.maxRoadDistance) nearRoad.at(x, z) = 1;
    }
  }

  const PrefixSum2D collideSum(collide);
  const PrefixSum2D waterSum(waterViol);
  const PrefixSum2D slopeSum(slopeViol);
  const PrefixSum2D wallSum(wallViol);
  const PrefixSum2D roadSum(nearRoad);

  const int lowX = std::min(kPlotBorderMargin, std::max(0, (w - c.w) / 2));
  const int lowZ = std::min(kPlotBorderMargin, std::max(0, (d - c.d) / 2));
  for (int x = lowX; x + c.w <= w - lowX; ++x) {
    for (int z = lowZ; z + c.d <= d - lowZ; ++z) {
      const int x1 = x + c.w - 1, z1 = z + c.d - 1;
      if (collideSum.sum(x, z, x1, z1) > 0) continue;
      if (waterSum.sum(x, z, x1, z1) > 0) continue;
      if (c.maxSlope && slopeSum.sum(x, z, x1, z1) > 0) continue;
      if ((c.insideWallOnly || c.outsideWallOnly) && wallSum.sum(x, z, x1, z1) > 0) continue;
      if (needRoadDist && roadSum.sum(x, z, x1, z1) == 0) continue;
      out.push_back(Candidate{Rect{x, z, c.w, c.d}});
    }
  }
  return out;
}

std::optional<Candidate> Blueprint::selectPlacement(
    const std::vector<Candidate>& candidates,
    const std::function<double(const Candidate&)>& fitness, int sampleSize)
{
  if (candidates.empty()) return std::nullopt;
  if (sampleSize < 1) sampleSize = 1;
  const std::vector<std::size_t> drawn =
      rng_.sampleIndices(candidates.size(), static_cast<std::size_t>(sampleSize));
  bool have = false;
  double bestScore = 0.0;
  Candidate best;
  for (const std::size_t i : drawn) {
    const double s = fitness(candidates[i]);
    if (!have || s > bestScore) {
      have = true;
      bestScore = s;
      best = candidates[i];
    }
  }
  return best;
}

void Blueprint::finishStep(StepReport report)
{
  report.step = step_;
  reports_.push_back(std::move(report));
  ++step_;
}

int Blueprint::anchorHeightFor(Rect rect) const
{
  // Majority terrain height over the footprint; ties go to the lower level.
  std::map<int, int> votes;
  for (int x = rect.x; x <= rect.x1(); ++x)
    for (int z = rect.z; z <= rect.z1(); ++z) votes[terrain_.height.at(x, z)]++;
  int bestH = 0, bestN = -1;
  for (const auto& [h, n] : votes) {
    if (n > bestN) {
      bestN = n;
      bestH = h;
    }
  }
  return bestH;
}

std::optional<Point> Blueprint::nearestRoadCell(Rect rect) const
{
  const IntMap& dist = roadDistanceField();
  int best = INT_MAX;
  Point bestCell{0, 0};
  for (int x = rect.x; x <= rect.x1(); ++x) {
    for (int z = rect.z; z <= rect.z1(); ++z) {
      if (dist.at(x, z) < best) {
        best = dist.at(x, z);
        bestCell = Point{x, z};
      }
    }
  }
  if (best == INT_MAX) return std::nullopt;
  // Walk the BFS gradient from the best rect cell to the road itself.
  Point cur = bestCell;
  int guard = width() * depth();
  while (dist.at(cur.x, cur.z) > 0 && guard-- > 0) {
    for (const auto& dir : kDir4) {
      const int nx = cur.x + dir[0], nz = cur.z + dir[1];
      if (nx < 0 || nx >= width() || nz < 0 || nz >= depth()) continue;
      if (dist.at(nx, nz) < dist.at(cur.x, cur.z)) {
        cur = Point{nx, nz};
        break;
      }
    }
  }
  if (dist.at(cur.x, cur.z) != 0) return std::nullopt;
  return cur;
}

std::vector<std::string> Blueprint::verifyCoherence() const
{
  std::vector<std::string> problems;
  const int w = width(), d = depth();

  BoolMap roads(w, d, 0);
  for (const RoadSegment& s : roads_.segments)
    for (const Point& c : s.cells) {
      if (c.x < 0 || c.x >= w || c.z < 0 || c.z >= d) {
        problems.push_back("road cell out of bounds");
        continue;
      }
      roads.at(c.x, c.z) = 1;
    }
  if (!(roads == roadMap_)) problems.push_back("road_map drifted from road graph");

  BoolMap plots(w, d, 0);
  for (const Plot& p : plots_) {
    for (int x = p.rect.x; x <= p.rect.x1(); ++x)
      for (int z = p.rect.z; z <= p.rect.z1(); ++z) {
        if (x < 0 || x >= w || z < 0 || z >= d) {
          problems.push_back("plot " + std::to_string(p.id) + " out of bounds");
          continue;
        }
        plots.at(x, z) = 1;
      }
  }
  if (!(plots == plotMap_)) problems.push_back("plot_map drifted from plot table");

  for (std::size_t i = 0; i < plots_.size(); ++i)
    for (std::size_t j = i + 1; j < plots_.size(); ++j)
      if (plots_[i].rect.intersects(plots_[j].rect))
        problems.push_back("plots " + std::to_string(plots_[i].id) + " and " +
                           std::to_string(plots_[j].id) + " overlap");

  for (int x = 0; x < w; ++x)
    for (int z = 0; z < d; ++z) {
      if (plotMap_.at(x, z) && roadMap_.at(x, z)) {
        problems.push_back("plot intersects road");
        x = w;
        break;
      }
      if (plotMap_.at(x, z) && wallMap_.at(x, z)) {
        problems.push_back("plot intersects wall");
        x = w;
        break;
      }
    }

  if (wall_.placedStep) {
    if (wall_.path.empty()) {
      problems.push_back("wall placed but path empty");
    } else if (!(ManhattanDist(wall_.path.front(), wall_.path.back()) <= 1)) {
      problems.push_back("wall path is not a closed loop");
    }
  } else {
    for (int x = 0; x < w; ++x)
      for (int z = 0; z < d; ++z)
        if (walledInMap_.at(x, z)) {
          problems.push_back("walled_in_map nonempty before wall placement");
          x = w;
          break;
        }
  }

  // Road union must stay 4-connected.
  std::vector<Point> roadCells;
  for (int x = 0; x < w; ++x)
    for (int z = 0; z < d; ++z)
      if (roadMap_.at(x, z)) roadCells.push_back(Point{x, z});
  if (!roadCells.empty()) {
    BoolMap seen(w, d, 0);
    std::queue<Point> q;
    q.push(roadCells.front());
    seen.at(roadCells.front().x, roadCells.front().z) = 1;
    std::size_t count = 1;
    while (!q.empty()) {
      const Point p = q.front();
      q.pop();
      for (const auto& dir : kDir4) {
        const int nx = p.x + dir[0], nz = p.z + dir[1];
        if (nx < 0 || nx >= w || nz < 0 || nz >= d) continue;
        if (!roadMap_.at(nx, nz) || seen.at(nx, nz)) continue;
        seen.at(nx, nz) = 1;
        ++count;
        q.push(Point{nx, nz});
      }
    }
    if (count != roadCells.size()) problems.push_back("road network is not 4-connected");
  }
  return problems;
}

std::string Blueprint::eventLogText() const
{
  std::string out;
  char line[256];
  for (const Event& e : events_) {
    std::snprintf(line, sizeof(line), "%d\t%s\t%s\t%d\t%d,%d,%d,%d\n", e.step, e.agent.c_str(),
                  e.action.c_str(), e.entityId, e.rect.x, e.rect.z, e.rect.w, e.rect.d);
    out += line;
  }
  return out;
}

void Blueprint::writeSnapshot(const std::string& path) const { WriteSnapshot(*this, path); }

void WriteSnapshot(const Blueprint& bp, const std::string& path)
{
  const int w = bp.width(), d = bp.depth();
  const TerrainMaps& t = bp.terrain();

  int minH = t.height.at(0, 0), maxH = minH;
  for (int z = 0; z < d; ++z)
    for (int x = 0; x < w; ++x) {
      minH = std::min(minH, t.height.at(x, z));
      maxH = std::max(maxH, t.height.at(x, z));
    }
  const int range = std::max(1, maxH - minH);

  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(w) * d * 3);
  auto put = [&](int x, int z, Rgb c) {
    const std::size_t i = (static_cast<std::size_t>(z) * w + x) * 3;
    rgb[i] = c.r;
    rgb[i + 1] = c.g;
    rgb[i + 2] = c.b;
  };

  for (int z = 0; z < d; ++z) {
    for (int x = 0; x < w; ++x) {
      const auto g =
          static_cast<std::uint8_t>(60 + 160 * (t.height.at(x, z) - minH) / range);
      Rgb c{g, g, g};
      if (t.water.at(x, z)) c = {50, 90, 200};
      put(x, z, c);
    }
  }
  for (const Plot& p : bp.plots()) {
    const Rgb c = PlotColor(p.kind);
    for (int x = p.rect.x; x <= p.rect.x1(); ++x)
      for (int z = p.rect.z; z <= p.rect.z1(); ++z) put(x, z, c);
  }
  for (int z = 0; z < d; ++z)
    for (int x = 0; x < w; ++x) {
      if (bp.roadMap().at(x, z)) put(x, z, Rgb{70, 70, 70});
      if (bp.wallMap().at(x, z)) put(x, z, Rgb{0, 0, 0});
    }
  WritePpm(path, w, d, rgb);
}

}  // namespace citygen
