#pragma once

#include "citygen/Analysis.hpp"
#include "citygen/Blueprint.hpp"
#include "citygen/World.hpp"

#include <string>

namespace citygen::testutil {

// Flat all-ground terrain maps of the given size and height.
inline TerrainMaps FlatTerrain(int w, int d, int h = 20)
{
  TerrainMaps maps;
  maps.height = IntMap(w, d, h);
  maps.slope = RealMap(w, d, 0.0);
  maps.water = BoolMap(w, d, 0);
  maps.structure = BoolMap(w, d, 0);
  maps.tree = BoolMap(w, d, 0);
  return maps;
}

// Flat world with a uniform ground height, no trees.
inline VoxelWorld FlatWorld(int xs, int zs, int ground = 20, int ys = 64)
{
  VoxelWorld world(xs, ys, zs, 7, ground - 5);
  const std::uint16_t stone = world.registerBlock("stone", BlockClass::Ground);
  const std::uint16_t grass = world.registerBlock("grass_block", BlockClass::Ground);
  for (int x = 0; x < xs; ++x)
    for (int z = 0; z < zs; ++z)
      for (int y = 0; y <= ground; ++y) world.setIndex(x, y, z, y == ground ? grass : stone);
  return world;
}

inline std::string TempPath(const std::string& name)
{
  return std::string("/tmp/citygen_test_") + name;
}

inline const char* DataDir()
{
#ifdef CITYGEN_DATA_DIR
  return CITYGEN_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace citygen::testutil
