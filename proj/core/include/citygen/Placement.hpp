#pragma once

#include "citygen/Blueprint.hpp"
#include "citygen/CellModel.hpp"
#include "citygen/World.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace citygen {

struct PlacementConfig {
  int cellSize = 7;        // S; body models must share it
  int unitHeight = 5;      // blocks per layout level
  int churchTowerLevels = 8;
  int wallHeight = 6;
  int wallWidth = 3;
  int towerPeriod = 28;
  int sgWindow = 11;
  int sgOrder = 3;
  int farmRounds = 12;
  int farmBlobsMin = 2;
  int farmBlobsMax = 4;
};

// Terrain-contour farm region: original plot cells plus per-height dilation.
struct FarmRegion {
  int plotId = 0;
  std::string crop;
  std::vector<Point> cells;       // area-relative, deterministic order
  std::map<int, int> levelCount;  // terrain height -> cells at that height
};

struct CategoryStats {
  long long blocksPlaced = 0;
  double seconds = 0.0;
  int structures = 0;
  int failures = 0;
};

struct PlacementReport {
  std::map<std::string, CategoryStats> categories;
  long long totalBlocks = 0;
  double treeRemovalSeconds = 0.0;
  long long treesRemoved = 0;
  double buildSeconds = 0.0;
};

// Removes every foliage-class block inside the given footprints (area
// coordinates); returns the number of blocks cleared. The tree map narrows
// the scan to columns that actually carry foliage.
long long RemoveTrees(VoxelWorld& world, const BuildArea& area, const BoolMap& treeMap,
                      const std::vector<Rect>& footprints);

// Heights of the walkable wall top along the closed band path: terrain
// sampled along the path, Savitzky-Golay smoothed (circular), wall height
// added, then projected so consecutive steps never exceed 1.
std::vector<int> PlanWallHeights(const WallBand& band, const IntMap& height,
                                 const PlacementConfig& cfg);

// Random connected layout of cell heights for a plot; church layouts carry
// one tower cell of churchTowerLevels.
struct CellLayout {
  int gridW = 0;
  int gridD = 0;
  std::vector<int> heights;  // 0 = absent cell
  int at(int i, int j) const { return heights[static_cast<std::size_t>(j) * gridW + i]; }
  int& at(int i, int j) { return heights[static_cast<std::size_t>(j) * gridW + i]; }
};

CellLayout MakeCellLayout(const Plot& plot, const PlacementConfig& cfg, Rng& rng);

// Stacks prefabricated models over the layout: faces against lower or absent
// neighbours get wall sockets, shared faces open sockets, stack tops a roof,
// and tower levels above every neighbour tower sides.
long long BuildCellStructure(VoxelWorld& world, const BuildArea& area, const Plot& plot,
                             const CellLayout& layout, const ModelLibrary& models,
                             const PlacementConfig& cfg, const QualitativeFeatures& features,
                             Rng& rng);

// Per-height morphological dilation of seeded farm blobs, masked to cells at
// the same terrain height that are not reserved for another structure.
std::vector<FarmRegion> ExpandFarms(const Blueprint& bp, const PlacementConfig& cfg, Rng& rng);

// Fences around each connected component of the union of all regions, so
// touching farms merge under one border.
long long FinalizeFarmBorders(VoxelWorld& world, const BuildArea& area,
                              const std::vector<FarmRegion>& regions, const Blueprint& bp);

// Phase 4: tree clearing, roads, wall, then every plot's structure in fixed
// category order. One structure failing is logged and skipped.
PlacementReport PlaceAll(const Blueprint& bp, VoxelWorld& world, const BuildArea& area,
                         const QualitativeFeatures& features, std::uint64_t rngSeed,
                         const ModelLibrary& models, const PlacementConfig& cfg = PlacementConfig{});

}  // namespace citygen
