#pragma once

#include "citygen/Placement.hpp"

#include <string>

namespace citygen::detail {

// Concrete block choices for one structure: abstract material slots resolved
// against the structure kind and the local wood types.
struct MaterialSet {
  std::string wallPrimary = "oak_planks";
  std::string wallBeam = "oak_log";
  std::string floor = "oak_planks";
  std::string window = "glass_pane";
  std::string roof = "dark_oak_planks";
  std::string battlement = "oak_fence";
  std::string door = "oak_door";
};

MaterialSet MaterialsFor(PlotKind kind, const QualitativeFeatures& features, Rng& rng);

const std::string& SlotBlock(const MaterialSet& mats, MaterialSlot slot);

// Shared column helpers (area-relative coordinates plus the area origin).
struct SiteWriter {
  VoxelWorld* world;
  const BuildArea* area;
  long long placed = 0;

  bool inArea(int x, int z) const
  {
    return x >= 0 && x < area->width && z >= 0 && z < area->depth;
  }
  void put(int x, int y, int z, const std::string& name, BlockClass cls)
  {
    if (!inArea(x, z) || y < 0 || y >= world->ySize()) return;
    world->set(area->originX + x, y, area->originZ + z, name, cls);
    ++placed;
  }
  void putAir(int x, int y, int z)
  {
    if (!inArea(x, z) || y < 0 || y >= world->ySize()) return;
    world->setIndex(area->originX + x, y, area->originZ + z, 0);
    ++placed;
  }
  BlockClass classAt(int x, int y, int z) const
  {
    return world->classAt(area->originX + x, y, area->originZ + z);
  }

  // Cuts a column down (or fills it up with stone) to the anchor level.
  void levelColumn(int x, int z, int anchor);
};

long long BuildRoads(const Blueprint& bp, VoxelWorld& world, const BuildArea& area,
                     const PlacementConfig& cfg);
long long BuildWall(const Blueprint& bp, VoxelWorld& world, const BuildArea& area,
                    const std::vector<int>& tops, const PlacementConfig& cfg);

// Per-plot builders write through the site writer; site.placed carries the
// block count.
void BuildBoxBuilding(SiteWriter& site, const Blueprint& bp, const Plot& plot,
                      const QualitativeFeatures& features, Rng& rng);
void BuildTreePlot(SiteWriter& site, const Blueprint& bp, const Plot& plot,
                   const QualitativeFeatures& features, Rng& rng);
void BuildBoat(SiteWriter& site, const Blueprint& bp, const Plot& plot, Rng& rng);
void BuildFishingPlatform(SiteWriter& site, const Blueprint& bp, const Plot& plot, Rng& rng);
void BuildDecoration(SiteWriter& site, const Blueprint& bp, const Plot& plot,
                     const QualitativeFeatures& features, Rng& rng);
void BuildWatchtower(SiteWriter& site, const Blueprint& bp, const Plot& plot, Rng& rng);
void BuildFarmRegion(SiteWriter& site, const Blueprint& bp, const FarmRegion& region, Rng& rng);

}  // namespace citygen::detail
