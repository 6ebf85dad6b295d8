#include "doctest.h"

#include "citygen/Analysis.hpp"
#include "citygen/Rng.hpp"
#include "helpers.hpp"

#include <algorithm>

using namespace citygen;
using namespace citygen::testutil;

namespace {

// Independent brute-force slope: direct evaluation of the definition.
RealMap SlopeOracle(const IntMap& height)
{
  RealMap out(height.width(), height.depth(), 0.0);
  for (int x = 0; x < height.width(); ++x) {
    for (int z = 0; z < height.depth(); ++z) {
      double best = 0.0;
      for (int dx = -1; dx <= 1; ++dx)
        for (int dz = -1; dz <= 1; ++dz) {
          if (dx == 0 && dz == 0) continue;
          const int nx = x + dx, nz = z + dz;
          if (nx < 0 || nx >= height.width() || nz < 0 || nz >= height.depth()) continue;
          best = std::max(best, static_cast<double>(std::abs(height.at(nx, nz) - height.at(x, z))));
        }
      out.at(x, z) = best;
    }
  }
  return out;
}

void PlantTree(VoxelWorld& w, int x, int z, int ground, int trunkH)
{
  const auto log = w.registerBlock("oak_log", BlockClass::FoliageLog);
  const auto leaf = w.registerBlock("oak_leaves", BlockClass::FoliageLeaf);
  for (int y = ground + 1; y <= ground + trunkH; ++y) w.setIndex(x, y, z, log);
  w.setIndex(x, ground + trunkH + 1, z, leaf);
}

}  // namespace

TEST_CASE("flat area: all-zero slope, empty boolean maps")
{
  const VoxelWorld w = FlatWorld(16, 16);
  TerrainMaps maps;
  QualitativeFeatures features;
  Analyze(w, BuildArea{0, 0, 16, 16}, &maps, &features);
  for (int x = 0; x < 16; ++x)
    for (int z = 0; z < 16; ++z) {
      CHECK(maps.slope.at(x, z) == 0.0);
      CHECK(maps.water.at(x, z) == 0);
      CHECK(maps.tree.at(x, z) == 0);
      CHECK(maps.structure.at(x, z) == 0);
      CHECK(maps.height.at(x, z) == 20);
    }
  CHECK(features.woodTypes == std::set<WoodType>{WoodType::Oak});  // default when treeless
}

TEST_CASE("trees are chopped off the heightmap and collected in the tree map")
{
  VoxelWorld w = FlatWorld(16, 16);
  PlantTree(w, 5, 5, 20, 4);
  TerrainMaps maps;
  QualitativeFeatures features;
  Analyze(w, BuildArea{0, 0, 16, 16}, &maps, &features);
  CHECK(maps.tree.at(5, 5) == 1);
  CHECK(maps.height.at(5, 5) == 20);  // same as the surrounding ground
  CHECK(maps.height.at(4, 5) == 20);
  CHECK(features.woodTypes.count(WoodType::Oak) == 1);
}

TEST_CASE("water column heights are the supporting ground")
{
  VoxelWorld w = FlatWorld(16, 16, 20);
  const auto water = w.registerBlock("water", BlockClass::Water);
  // Dig a pond at (8..9, 8): ground at 16, water filled to 20.
  for (int x = 8; x <= 9; ++x) {
    for (int y = 17; y <= 20; ++y) w.setIndex(x, y, 8, water);
  }
  TerrainMaps maps;
  QualitativeFeatures features;
  Analyze(w, BuildArea{0, 0, 16, 16}, &maps, &features);
  CHECK(maps.water.at(8, 8) == 1);
  CHECK(maps.water.at(9, 8) == 1);
  CHECK(maps.height.at(8, 8) == 16);
  CHECK(maps.water.at(7, 8) == 0);
}

TEST_CASE("pre-existing structures top the column and mask tree/water")
{
  VoxelWorld w = FlatWorld(16, 16);
  w.set(3, 21, 3, "cobblestone", BlockClass::Built);
  w.set(3, 22, 3, "cobblestone", BlockClass::Built);
  TerrainMaps maps;
  QualitativeFeatures features;
  Analyze(w, BuildArea{0, 0, 16, 16}, &maps, &features);
  CHECK(maps.structure.at(3, 3) == 1);
  CHECK(maps.tree.at(3, 3) == 0);
  CHECK(maps.water.at(3, 3) == 0);
  CHECK(maps.height.at(3, 3) == 22);
}

TEST_CASE("cliff slope equals the step height")
{
  VoxelWorld w(16, 64, 16, 0, 5);
  const auto stone = w.registerBlock("stone", BlockClass::Ground);
  for (int x = 0; x < 16; ++x)
    for (int z = 0; z < 16; ++z) {
      const int h = x < 8 ? 20 : 23;  // 3-block cliff between x<8 and x>=8
      for (int y = 0; y <= h; ++y) w.setIndex(x, y, z, stone);
    }
  TerrainMaps maps;
  QualitativeFeatures features;
  Analyze(w, BuildArea{0, 0, 16, 16}, &maps, &features);
  const RealMap oracle = SlopeOracle(maps.height);
  for (int x = 0; x < 16; ++x)
    for (int z = 0; z < 16; ++z) CHECK(maps.slope.at(x, z) == oracle.at(x, z));
  CHECK(maps.slope.at(7, 4) == 3.0);
  CHECK(maps.slope.at(8, 4) == 3.0);
  CHECK(maps.slope.at(3, 4) == 0.0);
}

TEST_CASE("slope unit ramp and degenerate 1x1")
{
  IntMap ramp(8, 8, 0);
  for (int x = 0; x < 8; ++x)
    for (int z = 0; z < 8; ++z) ramp.at(x, z) = x;
  const RealMap slope = SlopeOf(ramp);
  for (int x = 1; x < 7; ++x)
    for (int z = 1; z < 7; ++z) CHECK(slope.at(x, z) == 1.0);

  IntMap single(1, 1, 5);
  CHECK(SlopeOf(single).at(0, 0) == 0.0);
}

TEST_CASE("slope matches the brute-force oracle on random maps")
{
  Rng rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const int w = 2 + static_cast<int>(rng.nextBelow(31));
    const int d = 2 + static_cast<int>(rng.nextBelow(31));
    IntMap height(w, d, 0);
    for (int x = 0; x < w; ++x)
      for (int z = 0; z < d; ++z) height.at(x, z) = static_cast<int>(rng.nextBelow(30));
    const RealMap fast = SlopeOf(height);
    const RealMap oracle = SlopeOracle(height);
    for (int x = 0; x < w; ++x)
      for (int z = 0; z < d; ++z) REQUIRE(fast.at(x, z) == oracle.at(x, z));
  }
}

TEST_CASE("flattest spot: tie-break, exclusions, and the all-water error")
{
  SUBCASE("flat map picks the first valid centre")
  {
    const TerrainMaps maps = FlatTerrain(16, 16);
    const Point spot = FlattestSpot(maps, 9);
    CHECK(spot.x == 4);
    CHECK(spot.z == 4);
  }
  SUBCASE("bumpy right half pushes the centre left")
  {
    TerrainMaps maps = FlatTerrain(32, 32);
    Rng rng(5);
    for (int x = 16; x < 32; ++x)
      for (int z = 0; z < 32; ++z) maps.height.at(x, z) = 20 + static_cast<int>(rng.nextBelow(6));
    maps.slope = SlopeOf(maps.height);

    // Exhaustive window-scan oracle.
    const int window = 9, half = 4;
    double bestSum = 1e18;
    Point best{0, 0};
    for (int x = half; x + half < 32; ++x)
      for (int z = half; z + half < 32; ++z) {
        double sum = 0.0;
        for (int dx = -half; dx <= half; ++dx)
          for (int dz = -half; dz <= half; ++dz) sum += maps.slope.at(x + dx, z + dz);
        if (sum < bestSum) {
          bestSum = sum;
          best = Point{x, z};
        }
      }
    const Point spot = FlattestSpot(maps, window);
    CHECK(spot.x == best.x);
    CHECK(spot.z == best.z);
    CHECK(spot.x < 16);
  }
  SUBCASE("all water is an explicit error")
  {
    TerrainMaps maps = FlatTerrain(16, 16);
    maps.water.fill(1);
    CHECK_THROWS_AS(FlattestSpot(maps, 9), NoBuildableLand);
  }
}

TEST_CASE("map dumps share the build area dimensions")
{
  const VoxelWorld w = SynthesizeTerrain(11, 48, 48, 48, Biome::Plains, 0.3);
  TerrainMaps maps;
  QualitativeFeatures features;
  const BuildArea area{8, 8, 32, 24};
  Analyze(w, area, &maps, &features);
  CHECK(maps.height.width() == 32);
  CHECK(maps.height.depth() == 24);
  CHECK(maps.slope.width() == 32);
  CHECK(maps.water.depth() == 24);
  CHECK(maps.tree.width() == 32);
  CHECK(maps.structure.depth() == 24);

  // Tree-removal invariant: the surface block under the height map is never
  // foliage.
  for (int x = 0; x < 32; ++x)
    for (int z = 0; z < 24; ++z) {
      const int h = maps.height.at(x, z);
      const BlockClass cls = w.classAt(area.originX + x, h, area.originZ + z);
      CHECK(cls != BlockClass::FoliageLog);
      CHECK(cls != BlockClass::FoliageLeaf);
      CHECK(h < w.ySize());
    }
}
