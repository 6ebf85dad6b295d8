#include "citygen/Analysis.hpp"

#include "citygen/Image.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

namespace citygen {

namespace {

const char* kWoodNames[] = {"oak", "birch", "spruce", "jungle", "acacia", "dark_oak"};

bool WoodFromLogName(const std::string& name, WoodType* out)
{
  for (int i = 0; i < 6; ++i) {
    const std::string prefix = std::string(kWoodNames[i]) + "_log";
    if (name == prefix) {
      *out = static_cast<WoodType>(i);
      return true;
    }
  }
  return false;
}

}  // namespace

const char* WoodTypeName(WoodType w) { return kWoodNames[static_cast<int>(w)]; }

void Analyze(const VoxelWorld& world, const BuildArea& area, TerrainMaps* maps,
             QualitativeFeatures* features)
{
  ValidateBuildArea(world, area);
  const int w = area.width;
  const int d = area.depth;

  maps->height = IntMap(w, d, 0);
  maps->water = BoolMap(w, d, 0);
  maps->structure = BoolMap(w, d, 0);
  maps->tree = BoolMap(w, d, 0);

  features->woodTypes.clear();
  std::map<Biome, int> biomeCount;

  for (int x = 0; x < w; ++x) {
    for (int z = 0; z < d; ++z) {
      const int wx = area.originX + x;
      const int wz = area.originZ + z;
      biomeCount[world.biomeAt(wx, wz)]++;

      // Walk down from the sky. Trees are chopped off: foliage seen on the
      // way down marks the tree map and is skipped for the height.
      bool sawFoliage = false;
      int y = world.ySize() - 1;
      int surfaceY = 0;
      BlockClass surface = BlockClass::Air;
      for (; y >= 0; --y) {
        const BlockClass cls = world.classAt(wx, y, wz);
        if (cls == BlockClass::Air) continue;
        if (cls == BlockClass::FoliageLog || cls == BlockClass::FoliageLeaf) {
          sawFoliage = true;
          if (cls == BlockClass::FoliageLog) {
            WoodType wt;
            if (WoodFromLogName(world.get(wx, y, wz).name, &wt)) features->woodTypes.insert(wt);
          }
          continue;
        }
        surface = cls;
        surfaceY = y;
        break;
      }

      if (surface == BlockClass::Built) {
        // Pre-existing structure tops the column; tree/water stay clear here.
        maps->structure.at(x, z) = 1;
        maps->height.at(x, z) = surfaceY;
        continue;
      }
      if (sawFoliage) maps->tree.at(x, z) = 1;
      if (surface == BlockClass::Water || surface == BlockClass::Lava) {
        maps->water.at(x, z) = 1;  // lava is unbuildable, same as water
        int gy = surfaceY;
        while (gy > 0 && (world.classAt(wx, gy, wz) == BlockClass::Water ||
                          world.classAt(wx, gy, wz) == BlockClass::Lava)) {
          --gy;
        }
        maps->height.at(x, z) = gy;  // supporting ground under the water body
        continue;
      }
      maps->height.at(x, z) = surfaceY;
    }
  }

  maps->slope = SlopeOf(maps->height);

  if (features->woodTypes.empty()) features->woodTypes.insert(WoodType::Oak);
  Biome dominant = Biome::Plains;
  int best = -1;
  for (const auto& [b, count] : biomeCount) {
    if (count > best) {
      best = count;
      dominant = b;
    }
  }
  features->dominantBiome = dominant;
}

RealMap SlopeOf(const IntMap& height)
{
  const int w = height.width();
  const int d = height.depth();
  RealMap slope(w, d, 0.0);
  for (int x = 0; x < w; ++x) {
    for (int z = 0; z < d; ++z) {
      const int h = height.at(x, z);
      int maxDiff = 0;
      for (const auto& dir : kDir8) {
        const int nx = x + dir[0];
        const int nz = z + dir[1];
        if (nx < 0 || nx >= w || nz < 0 || nz >= d) continue;
        maxDiff = std::max(maxDiff, std::abs(height.at(nx, nz) - h));
      }
      slope.at(x, z) = static_cast<double>(maxDiff);
    }
  }
  return slope;
}

Point FlattestSpot(const TerrainMaps& maps, int window)
{
  const int w = maps.height.width();
  const int d = maps.height.depth();
  if (window < 1 || window % 2 == 0) throw BoundsError("window must be odd and positive");
  if (window > w || window > d) throw BoundsError("window larger than build area");

  // Prefix sums over slope and the exclusion masks make each window O(1).
  std::vector<double> slopeAcc(static_cast<std::size_t>(w + 1) * (d + 1), 0.0);
  for (int z = 0; z < d; ++z) {
    double rowSum = 0.0;
    for (int x = 0; x < w; ++x) {
      rowSum += maps.slope.at(x, z);
      slopeAcc[static_cast<std::size_t>(z + 1) * (w + 1) + (x + 1)] =
          slopeAcc[static_cast<std::size_t>(z) * (w + 1) + (x + 1)] + rowSum;
    }
  }
  BoolMap blocked(w, d, 0);
  for (int x = 0; x < w; ++x)
    for (int z = 0; z < d; ++z)
      blocked.at(x, z) = (maps.water.at(x, z) || maps.structure.at(x, z)) ? 1 : 0;
  PrefixSum2D blockedSum(blocked);

  const int half = window / 2;
  bool found = false;
  double bestSum = 0.0;
  Point bestCenter{0, 0};
  for (int x = half; x + half < w; ++x) {
    for (int z = half; z + half < d; ++z) {
      if (blockedSum.sum(x - half, z - half, x + half, z + half) > 0) continue;
      const double s =
          slopeAcc[static_cast<std::size_t>(z + half + 1) * (w + 1) + (x + half + 1)] -
          slopeAcc[static_cast<std::size_t>(z - half) * (w + 1) + (x + half + 1)] -
          slopeAcc[static_cast<std::size_t>(z + half + 1) * (w + 1) + (x - half)] +
          slopeAcc[static_cast<std::size_t>(z - half) * (w + 1) + (x - half)];
      if (!found || s < bestSum) {
        found = true;
        bestSum = s;
        bestCenter = Point{x, z};
      }
    }
  }
  if (!found) throw NoBuildableLand("no buildable land: every window contains water or structure");
  return bestCenter;
}

void DumpMaps(const TerrainMaps& maps, const std::string& outDir)
{
  std::filesystem::create_directories(outDir);
  const int w = maps.height.width();
  const int d = maps.height.depth();

  auto boolPgm = [&](const BoolMap& m, const std::string& name) {
    std::vector<std::uint8_t> gray(static_cast<std::size_t>(w) * d);
    for (int z = 0; z < d; ++z)
      for (int x = 0; x < w; ++x)
        gray[static_cast<std::size_t>(z) * w + x] = m.at(x, z) ? 255 : 0;
    WritePgm(outDir + "/" + name + ".pgm", w, d, gray);
  };

  int minH = maps.height.at(0, 0), maxH = minH;
  for (int z = 0; z < d; ++z)
    for (int x = 0; x < w; ++x) {
      minH = std::min(minH, maps.height.at(x, z));
      maxH = std::max(maxH, maps.height.at(x, z));
    }
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(w) * d);
  const int range = std::max(1, maxH - minH);
  for (int z = 0; z < d; ++z)
    for (int x = 0; x < w; ++x)
      gray[static_cast<std::size_t>(z) * w + x] =
          static_cast<std::uint8_t>(255 * (maps.height.at(x, z) - minH) / range);
  WritePgm(outDir + "/height.pgm", w, d, gray);

  double maxS = 0.0;
  for (int z = 0; z < d; ++z)
    for (int x = 0; x < w; ++x) maxS = std::max(maxS, maps.slope.at(x, z));
  for (int z = 0; z < d; ++z)
    for (int x = 0; x < w; ++x)
      gray[static_cast<std::size_t>(z) * w + x] = static_cast<std::uint8_t>(
          maxS > 0 ? 255.0 * maps.slope.at(x, z) / maxS : 0.0);
  WritePgm(outDir + "/slope.pgm", w, d, gray);

  boolPgm(maps.water, "water");
  boolPgm(maps.structure, "structure");
  boolPgm(maps.tree, "tree");
}

}  // namespace citygen
