#pragma once

#include "citygen/FeatureMap.hpp"
#include "citygen/Geometry.hpp"
#include "citygen/World.hpp"

#include <set>
#include <string>

namespace citygen {

enum class WoodType : std::uint8_t { Oak = 0, Birch, Spruce, Jungle, Acacia, DarkOak };

const char* WoodTypeName(WoodType w);

// The terrain-related feature maps every planning decision reads.
struct TerrainMaps {
  IntMap height;      // tree-free surface height; at water cells, the supporting ground
  RealMap slope;      // 8-neighbour max abs height difference
  BoolMap water;      // column surface is water (lava counts: unbuildable)
  BoolMap structure;  // column topped by pre-existing built blocks
  BoolMap tree;       // column top run is foliage
};

struct QualitativeFeatures {
  std::set<WoodType> woodTypes;
  Biome dominantBiome = Biome::Plains;
};

// Phase 1. Extracts all maps in one pass so they are mutually consistent:
// trees are chopped off the heightmap and collected in the tree map.
void Analyze(const VoxelWorld& world, const BuildArea& area, TerrainMaps* maps,
             QualitativeFeatures* features);

// slope(x,z) = max over 8 neighbours of |height(n) - height(x,z)|; border
// cells use the neighbours that exist, a 1x1 map has slope 0.
RealMap SlopeOf(const IntMap& height);

// Centre of the window with the minimal summed slope, excluding windows that
// contain water or pre-existing structure. Ties break to smallest (x, then z).
// Throws NoBuildableLand when no window qualifies.
Point FlattestSpot(const TerrainMaps& maps, int window);

// Grayscale PGM (P5) dumps, one file per map: heights scaled to 0..255,
// booleans as 0/255.
void DumpMaps(const TerrainMaps& maps, const std::string& outDir);

}  // namespace citygen
