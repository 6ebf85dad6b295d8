#include "citygen/Placement.hpp"

#include "PlacementInternal.hpp"
#include "citygen/SavitzkyGolay.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

namespace citygen {

namespace detail {

void SiteWriter::levelColumn(int x, int z, int anchor)
{
  if (!inArea(x, z)) return;
  for (int y = world->ySize() - 1; y > anchor; --y) {
    if (classAt(x, y, z) != BlockClass::Air) putAir(x, y, z);
  }
  for (int y = anchor; y >= 0; --y) {
    const BlockClass cls = classAt(x, y, z);
    if (cls == BlockClass::Ground || cls == BlockClass::Built) break;
    put(x, y, z, "stone", BlockClass::Ground);
  }
}

MaterialSet MaterialsFor(PlotKind kind, const QualitativeFeatures& features, Rng& rng)
{
  // Wood comes from what grows in the area, so structures blend in.
  std::vector<WoodType> woods(features.woodTypes.begin(), features.woodTypes.end());
  const WoodType wood = woods.empty() ? WoodType::Oak
                                      : woods[rng.nextBelow(std::max<std::size_t>(1, woods.size()))];
  const std::string w = WoodTypeName(wood);

  MaterialSet m;
  m.wallPrimary = w + "_planks";
  m.wallBeam = w + "_log";
  m.floor = w + "_planks";
  m.roof = w == "oak" ? "dark_oak_planks" : "oak_planks";
  m.battlement = w + "_fence";
  m.door = w + "_door";
  switch (kind) {
  case PlotKind::Church:
    m.wallPrimary = "stone_bricks";
    m.wallBeam = "chiseled_stone_bricks";
    m.floor = "polished_andesite";
    m.roof = "deepslate_tiles";
    m.battlement = "stone_brick_wall";
    break;
  case PlotKind::Industrial:
    m.wallPrimary = "cobblestone";
    m.roof = w + "_planks";
    break;
  case PlotKind::Commercial:
    m.roof = "white_wool";
    break;
  default: break;
  }
  return m;
}

const std::string& SlotBlock(const MaterialSet& mats, MaterialSlot slot)
{
  static const std::string air = "air";
  switch (slot) {
  case MaterialSlot::WallPrimary: return mats.wallPrimary;
  case MaterialSlot::WallBeam: return mats.wallBeam;
  case MaterialSlot::Floor: return mats.floor;
  case MaterialSlot::Window: return mats.window;
  case MaterialSlot::Roof: return mats.roof;
  case MaterialSlot::Battlement: return mats.battlement;
  case MaterialSlot::Door: return mats.door;
  case MaterialSlot::None: return air;
  }
  return air;
}

long long BuildRoads(const Blueprint& bp, VoxelWorld& world, const BuildArea& area,
                     const PlacementConfig& cfg)
{
  (void)cfg;
  SiteWriter site{&world, &area};
  const IntMap& height = bp.terrain().height;
  const int w = bp.width(), d = bp.depth();

  // Realize the 1-wide polylines as a 3-wide corridor, releveled to +-1 of
  // the centreline so the surface stays walkable.
  IntMap target(w, d, -1);
  for (const RoadSegment& seg : bp.roads().segments) {
    for (const Point& c : seg.cells) {
      const int center = height.at(c.x, c.z);
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dz = -1; dz <= 1; ++dz) {
          const int x = c.x + dx, z = c.z + dz;
          if (x < 0 || x >= w || z < 0 || z >= d) continue;
          if (bp.plotMap().at(x, z) || bp.terrain().structure.at(x, z)) continue;
          if (seg.bridge && bp.terrain().water.at(x, z)) {
            target.at(x, z) = world.seaLevel() + 1;  // deck above the water surface
            continue;
          }
          if (bp.terrain().water.at(x, z)) continue;
          const int t = std::clamp(height.at(x, z), center - 1, center + 1);
          target.at(x, z) = std::max(target.at(x, z), t);
        }
      }
    }
  }

  for (int x = 0; x < w; ++x) {
    for (int z = 0; z < d; ++z) {
      const int t = target.at(x, z);
      if (t < 0) continue;
      if (bp.terrain().water.at(x, z)) {
        // Bridge deck with a plank underside.
        site.put(x, t, z, "oak_planks", BlockClass::Built);
        continue;
      }
      site.levelColumn(x, z, t);
      site.put(x, t, z, "dirt_path", BlockClass::Built);
    }
  }

  // Stairs where the centreline steps one block.
  for (const RoadSegment& seg : bp.roads().segments) {
    for (std::size_t i = 1; i < seg.cells.size(); ++i) {
      const Point a = seg.cells[i - 1], b = seg.cells[i];
      const int ta = target.at(a.x, a.z), tb = target.at(b.x, b.z);
      if (ta < 0 || tb < 0 || std::abs(ta - tb) != 1) continue;
      const Point lower = ta < tb ? a : b;
      site.put(lower.x, std::max(ta, tb), lower.z, "oak_stairs", BlockClass::Built);
    }
  }
  return site.placed;
}

long long BuildWall(const Blueprint& bp, VoxelWorld& world, const BuildArea& area,
                    const std::vector<int>& tops, const PlacementConfig& cfg)
{
  SiteWriter site{&world, &area};
  const WallBand& band = bp.wall();
  const IntMap& height = bp.terrain().height;
  const int w = bp.width(), d = bp.depth();

  // Gates: openings wherever the band meets the road corridor.
  BoolMap gate(w, d, 0);
  for (int x = 0; x < w; ++x)
    for (int z = 0; z < d; ++z) {
      if (!bp.roadMap().at(x, z)) continue;
      for (int dx = -1; dx <= 1; ++dx)
        for (int dz = -1; dz <= 1; ++dz) {
          const int nx = x + dx, nz = z + dz;
          if (nx >= 0 && nx < w && nz >= 0 && nz < d) gate.at(nx, nz) = 1;
        }
    }

  // Shared band columns take the max top of the contributing path cells.
  IntMap columnTop(w, d, -1);
  for (std::size_t i = 0; i < band.path.size(); ++i) {
    const Point c = band.path[i];
    const int r = band.cellWidth[i] / 2;
    for (int dx = -r; dx <= r; ++dx)
      for (int dz = -r; dz <= r; ++dz) {
        const int x = c.x + dx, z = c.z + dz;
        if (x < 0 || x >= w || z < 0 || z >= d) continue;
        if (bp.plotMap().at(x, z) || gate.at(x, z)) continue;
        columnTop.at(x, z) = std::max(columnTop.at(x, z), tops[i]);
      }
  }

  for (int x = 0; x < w; ++x) {
    for (int z = 0; z < d; ++z) {
      const int top = columnTop.at(x, z);
      if (top < 0) continue;
      const int base = bp.terrain().water.at(x, z) ? height.at(x, z) : height.at(x, z);
      for (int y = base + 1; y < top; ++y) site.put(x, y, z, "stone_bricks", BlockClass::Built);
      site.put(x, top, z, "stone_brick_slab", BlockClass::Built);
      // Battlement on band-edge columns, every other cell.
      bool edge = false;
      for (const auto& dir : kDir4) {
        const int nx = x + dir[0], nz = z + dir[1];
        if (nx < 0 || nx >= w || nz < 0 || nz >= d || columnTop.at(nx, nz) < 0) edge = true;
      }
      if (edge && ((x + z) % 2 == 0))
        site.put(x, top + 1, z, "stone_brick_wall", BlockClass::Built);
    }
  }

  // Periodic towers break the wall's uniformity.
  for (std::size_t i = 0; i < band.path.size(); i += cfg.towerPeriod) {
    const Point c = band.path[i];
    const int r = band.cellWidth[i] / 2 + 1;
    bool onRoad = false;
    for (int dx = -r; dx <= r && !onRoad; ++dx)
      for (int dz = -r; dz <= r && !onRoad; ++dz) {
        const int x = c.x + dx, z = c.z + dz;
        if (x < 0 || x >= w || z < 0 || z >= d) continue;
        if (gate.at(x, z) || bp.plotMap().at(x, z)) onRoad = true;
      }
    if (onRoad) continue;
    const int towerTop = tops[i] + 4;
    for (int dx = -r; dx <= r; ++dx)
      for (int dz = -r; dz <= r; ++dz) {
        const int x = c.x + dx, z = c.z + dz;
        if (x < 0 || x >= w || z < 0 || z >= d) continue;
        const bool rim = std::abs(dx) == r || std::abs(dz) == r;
        for (int y = height.at(x, z) + 1; y <= towerTop; ++y) {
          if (rim || y >= towerTop - 1)
            site.put(x, y, z, "stone_bricks", BlockClass::Built);
        }
        if (rim && ((dx + dz) % 2 == 0))
          site.put(x, towerTop + 1, z, "stone_brick_wall", BlockClass::Built);
      }
  }
  return site.placed;
}

}  // namespace detail

long long RemoveTrees(VoxelWorld& world, const BuildArea& area, const BoolMap& treeMap,
                      const std::vector<Rect>& footprints)
{
  BoolMap visit(area.width, area.depth, 0);
  for (const Rect& r : footprints) {
    for (int x = std::max(0, r.x); x <= std::min(area.width - 1, r.x1()); ++x)
      for (int z = std::max(0, r.z); z <= std::min(area.depth - 1, r.z1()); ++z)
        if (treeMap.at(x, z)) visit.at(x, z) = 1;
  }
  long long removed = 0;
  for (int x = 0; x < area.width; ++x) {
    for (int z = 0; z < area.depth; ++z) {
      if (!visit.at(x, z)) continue;
      const int wx = area.originX + x, wz = area.originZ + z;
      for (int y = world.ySize() - 1; y >= 0; --y) {
        const BlockClass cls = world.classAt(wx, y, wz);
        if (cls == BlockClass::FoliageLog || cls == BlockClass::FoliageLeaf) {
          world.setIndex(wx, y, wz, 0);
          ++removed;
        }
      }
    }
  }
  return removed;
}

std::vector<int> PlanWallHeights(const WallBand& band, const IntMap& height,
                                 const PlacementConfig& cfg)
{
  if (band.path.empty()) throw BoundsError("wall band is empty");
  std::vector<double> signal;
  signal.reserve(band.path.size());
  for (const Point& c : band.path) signal.push_back(static_cast<double>(height.at(c.x, c.z)));

  std::vector<double> smooth;
  if (static_cast<int>(signal.size()) < cfg.sgWindow) {
    smooth = MovingAverageCircular(signal, 3);
  } else {
    smooth = SavitzkyGolaySmoothCircular(signal, cfg.sgWindow, cfg.sgOrder);
  }

  std::vector<int> tops(signal.size());
  for (std::size_t i = 0; i < smooth.size(); ++i)
    tops[i] = static_cast<int>(std::lround(smooth[i])) + cfg.wallHeight;

  // Hard walkability: project onto the 1-Lipschitz upper envelope around the
  // loop (the filter alone cannot bound steps across terrain cliffs).
  const int n = static_cast<int>(tops.size());
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 1; i < 2 * n; ++i) {
      const int cur = i % n, prev = (i - 1) % n;
      tops[cur] = std::max(tops[cur], tops[prev] - 1);
    }
    for (int i = 2 * n - 1; i > 0; --i) {
      const int cur = (i - 1) % n, next = i % n;
      tops[cur] = std::max(tops[cur], tops[next] - 1);
    }
  }
  return tops;
}

PlacementReport PlaceAll(const Blueprint& bp, VoxelWorld& world, const BuildArea& area,
                         const QualitativeFeatures& features, std::uint64_t rngSeed,
                         const ModelLibrary& models, const PlacementConfig& cfg)
{
  using Clock = std::chrono::steady_clock;
  PlacementReport report;
  Rng rng(StreamSeed(rngSeed, "placement"));

  // Preparatory tree clearing over every planned footprint.
  const auto treeStart = Clock::now();
  std::vector<Rect> clearRects;
  for (const Plot& p : bp.plots()) clearRects.push_back(p.rect.dilated(1));
  for (const RoadSegment& seg : bp.roads().segments)
    for (const Point& c : seg.cells) clearRects.push_back(Rect{c.x - 1, c.z - 1, 3, 3});
  for (std::size_t i = 0; i < bp.wall().path.size(); ++i) {
    const Point c = bp.wall().path[i];
    const int r = bp.wall().cellWidth[i] / 2 + 1;
    clearRects.push_back(Rect{c.x - r, c.z - r, 2 * r + 1, 2 * r + 1});
  }
  report.treesRemoved = RemoveTrees(world, area, bp.terrain().tree, clearRects);
  report.treeRemovalSeconds = std::chrono::duration<double>(Clock::now() - treeStart).count();

  const auto buildStart = Clock::now();
  auto timeCategory = [&](const std::string& name, auto&& fn) {
    const auto start = Clock::now();
    CategoryStats& stats = report.categories[name];
    fn(stats);
    stats.seconds += std::chrono::duration<double>(Clock::now() - start).count();
    report.totalBlocks += stats.blocksPlaced;
  };

  timeCategory("roads", [&](CategoryStats& s) {
    s.blocksPlaced += detail::BuildRoads(bp, world, area, cfg);
    s.structures += static_cast<int>(bp.roads().segments.size());
  });

  if (bp.wall().placedStep) {
    timeCategory("wall", [&](CategoryStats& s) {
      const std::vector<int> tops = PlanWallHeights(bp.wall(), bp.terrain().height, cfg);
      s.blocksPlaced += detail::BuildWall(bp, world, area, tops, cfg);
      s.structures += 1;
    });
  }

  // One structure at a time, fixed category order, per-structure isolation.
  auto buildPlots = [&](const std::string& category, PlotKind kind, auto&& builder) {
    timeCategory(category, [&](CategoryStats& s) {
      for (const Plot& p : bp.plots()) {
        if (p.kind != kind) continue;
        detail::SiteWriter site{&world, &area};
        try {
          builder(site, p);
          s.blocksPlaced += site.placed;
          s.structures += 1;
        } catch (const std::exception&) {
          s.failures += 1;
        }
      }
    });
  };

  auto cellOrBox = [&](detail::SiteWriter& site, const Plot& p) {
    const int cells = std::min((p.rect.w - 2) / cfg.cellSize, (p.rect.d - 2) / cfg.cellSize);
    if (cells >= 1 && (p.kind == PlotKind::Church || p.kind == PlotKind::Residential)) {
      const CellLayout layout = MakeCellLayout(p, cfg, rng);
      site.placed += BuildCellStructure(world, area, p, layout, models, cfg, features, rng);
    } else {
      detail::BuildBoxBuilding(site, bp, p, features, rng);
    }
  };

  buildPlots("church", PlotKind::Church, cellOrBox);
  buildPlots("watchtower", PlotKind::Watchtower, [&](detail::SiteWriter& site, const Plot& p) {
    detail::BuildWatchtower(site, bp, p, rng);
  });
  buildPlots("residential", PlotKind::Residential, cellOrBox);
  buildPlots("commercial", PlotKind::Commercial, [&](detail::SiteWriter& site, const Plot& p) {
    detail::BuildBoxBuilding(site, bp, p, features, rng);
  });
  buildPlots("industrial", PlotKind::Industrial, [&](detail::SiteWriter& site, const Plot& p) {
    detail::BuildBoxBuilding(site, bp, p, features, rng);
  });

  timeCategory("farms", [&](CategoryStats& s) {
    const std::vector<FarmRegion> regions = ExpandFarms(bp, cfg, rng);
    for (const FarmRegion& region : regions) {
      detail::SiteWriter site{&world, &area};
      try {
        detail::BuildFarmRegion(site, bp, region, rng);
        s.blocksPlaced += site.placed;
        s.structures += 1;
      } catch (const std::exception&) {
        s.failures += 1;
      }
    }
    s.blocksPlaced += FinalizeFarmBorders(world, area, regions, bp);
  });

  buildPlots("trees", PlotKind::Tree, [&](detail::SiteWriter& site, const Plot& p) {
    detail::BuildTreePlot(site, bp, p, features, rng);
  });
  buildPlots("boats", PlotKind::Boat, [&](detail::SiteWriter& site, const Plot& p) {
    detail::BuildBoat(site, bp, p, rng);
  });
  buildPlots("fishing", PlotKind::FishingPlatform,
             [&](detail::SiteWriter& site, const Plot& p) {
               detail::BuildFishingPlatform(site, bp, p, rng);
             });
  buildPlots("decorations", PlotKind::Decoration, [&](detail::SiteWriter& site, const Plot& p) {
    detail::BuildDecoration(site, bp, p, features, rng);
  });

  report.buildSeconds = std::chrono::duration<double>(Clock::now() - buildStart).count();
  return report;
}

}  // namespace citygen
