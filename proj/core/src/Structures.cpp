#include "PlacementInternal.hpp"

#include <algorithm>
#include <cmath>

namespace citygen::detail {

namespace {

// Side of the rect facing the plot's road access: 0 N(-z), 1 E, 2 S, 3 W.
int RoadSide(const Plot& plot)
{
  if (!plot.roadAccess) return 2;
  const int dx = plot.roadAccess->x - plot.rect.center().x;
  const int dz = plot.roadAccess->z - plot.rect.center().z;
  if (std::abs(dx) >= std::abs(dz)) return dx < 0 ? 3 : 1;
  return dz < 0 ? 0 : 2;
}

}  // namespace

void BuildBoxBuilding(SiteWriter& site, const Blueprint& bp, const Plot& plot,
                      const QualitativeFeatures& features, Rng& rng)
{
  (void)bp;
  const MaterialSet mats = MaterialsFor(plot.kind, features, rng);
  const Rect r = plot.rect;
  const int anchor = plot.anchorHeight;
  const int wallTop = anchor + rng.rangeInt(4, 5);

  for (int x = r.x; x <= r.x1(); ++x)
    for (int z = r.z; z <= r.z1(); ++z) site.levelColumn(x, z, anchor);

  for (int x = r.x; x <= r.x1(); ++x) {
    for (int z = r.z; z <= r.z1(); ++z) {
      const bool edge = x == r.x || x == r.x1() || z == r.z || z == r.z1();
      const bool corner = (x == r.x || x == r.x1()) && (z == r.z || z == r.z1());
      site.put(x, anchor + 1, z, mats.floor, BlockClass::Built);
      if (edge) {
        for (int y = anchor + 2; y <= wallTop; ++y) {
          std::string block = corner ? mats.wallBeam : mats.wallPrimary;
          // A window band halfway up, skipping corners.
          if (!corner && y == anchor + 3 && ((x + z) % 2 == 0)) block = mats.window;
          site.put(x, y, z, block, BlockClass::Built);
        }
      }
      site.put(x, wallTop + 1, z, mats.roof, BlockClass::Built);
    }
  }

  // Door towards the road.
  const int side = RoadSide(plot);
  int doorX = r.x + r.w / 2, doorZ = r.z + r.d / 2;
  if (side == 0) doorZ = r.z;
  else if (side == 2) doorZ = r.z1();
  else if (side == 3) doorX = r.x;
  else doorX = r.x1();
  site.put(doorX, anchor + 2, doorZ, mats.door, BlockClass::Built);
  site.putAir(doorX, anchor + 3, doorZ);

  // Furniture along the inside, no duplicates per room.
  static const char* kItems[] = {"barrel", "crafting_table", "furnace", "chest",
                                 "bookshelf", "cauldron", "loom", "bed"};
  const int nItems = rng.rangeInt(2, 4);
  const auto picks = rng.sampleIndices(std::size(kItems), nItems);
  for (const std::size_t pick : picks) {
    if (r.w <= 2 || r.d <= 2) break;
    const int fx = r.x + 1 + static_cast<int>(rng.nextBelow(r.w - 2));
    const int fz = r.z + 1 + static_cast<int>(rng.nextBelow(r.d - 2));
    if (site.classAt(fx, anchor + 2, fz) == BlockClass::Air)
      site.put(fx, anchor + 2, fz, kItems[pick], BlockClass::Built);
  }
}

void BuildTreePlot(SiteWriter& site, const Blueprint& bp, const Plot& plot,
                   const QualitativeFeatures& features, Rng& rng)
{
  const Point c = plot.rect.center();
  const int ground = bp.terrain().height.at(c.x, c.z);
  std::vector<WoodType> woods(features.woodTypes.begin(), features.woodTypes.end());
  const WoodType wood =
      woods.empty() ? WoodType::Oak : woods[rng.nextBelow(std::max<std::size_t>(1, woods.size()))];
  const std::string log = std::string(WoodTypeName(wood)) + "_log";
  const std::string leaves = std::string(WoodTypeName(wood)) + "_leaves";

  const int trunkH = rng.rangeInt(4, 6);
  for (int y = ground + 1; y <= ground + trunkH; ++y)
    site.put(c.x, y, c.z, log, BlockClass::FoliageLog);
  for (int y = ground + trunkH - 1; y <= ground + trunkH + 1; ++y) {
    const int radius = y >= ground + trunkH ? 1 : 2;
    for (int dx = -radius; dx <= radius; ++dx)
      for (int dz = -radius; dz <= radius; ++dz) {
        if (dx == 0 && dz == 0 && y <= ground + trunkH) continue;
        if (std::abs(dx) == radius && std::abs(dz) == radius && radius > 1) continue;
        if (site.inArea(c.x + dx, c.z + dz) &&
            site.classAt(c.x + dx, y, c.z + dz) == BlockClass::Air)
          site.put(c.x + dx, y, c.z + dz, leaves, BlockClass::FoliageLeaf);
      }
  }
}

void BuildBoat(SiteWriter& site, const Blueprint& bp, const Plot& plot, Rng& rng)
{
  (void)rng;
  const Rect r = plot.rect;
  const int deck = site.world->seaLevel() + 1;
  const bool large = plot.variant == "large";
  (void)bp;

  for (int x = r.x; x <= r.x1(); ++x) {
    for (int z = r.z; z <= r.z1(); ++z) {
      const bool corner = (x == r.x || x == r.x1()) && (z == r.z || z == r.z1());
      if (corner) continue;  // rounded bow and stern
      site.put(x, deck - 1, z, "spruce_planks", BlockClass::Built);
      const bool edge = x == r.x || x == r.x1() || z == r.z || z == r.z1();
      if (edge) site.put(x, deck, z, "spruce_fence", BlockClass::Built);
    }
  }
  if (large) {
    const Point c = r.center();
    for (int y = deck; y <= deck + 7; ++y) site.put(c.x, y, c.z, "spruce_log", BlockClass::Built);
    for (int y = deck + 3; y <= deck + 6; ++y) {
      const int spread = (deck + 7 - y) / 2 + 1;
      for (int k = 1; k <= spread; ++k) {
        if (r.w >= r.d) {
          site.put(c.x - k, y, c.z, "white_wool", BlockClass::Built);
          site.put(c.x + k, y, c.z, "white_wool", BlockClass::Built);
        } else {
          site.put(c.x, y, c.z - k, "white_wool", BlockClass::Built);
          site.put(c.x, y, c.z + k, "white_wool", BlockClass::Built);
        }
      }
    }
  }
}

void BuildFishingPlatform(SiteWriter& site, const Blueprint& bp, const Plot& plot, Rng& rng)
{
  (void)rng;
  const Rect r = plot.rect;
  const int deck = site.world->seaLevel() + 1;
  for (int x = r.x; x <= r.x1(); ++x)
    for (int z = r.z; z <= r.z1(); ++z) {
      site.put(x, deck, z, "oak_planks", BlockClass::Built);
      const bool edge = x == r.x || x == r.x1() || z == r.z || z == r.z1();
      if (edge) site.put(x, deck + 1, z, "oak_fence", BlockClass::Built);
    }
  // Stilts at the corners, down to the lake bed.
  const int corners[4][2] = {{r.x, r.z}, {r.x1(), r.z}, {r.x, r.z1()}, {r.x1(), r.z1()}};
  for (const auto& c : corners) {
    const int bed = bp.terrain().height.at(c[0], c[1]);
    for (int y = bed + 1; y < deck; ++y) site.put(c[0], y, c[1], "oak_log", BlockClass::Built);
  }
}

void BuildDecoration(SiteWriter& site, const Blueprint& bp, const Plot& plot,
                     const QualitativeFeatures& features, Rng& rng)
{
  (void)features;
  (void)rng;
  const Rect r = plot.rect;
  const int h = plot.anchorHeight;
  const Point c = r.center();
  const std::string& item = plot.variant;
  (void)bp;

  if (item == "wheelbarrow") {
    site.put(r.x, h + 1, r.z, "composter", BlockClass::Built);
    site.put(r.x1(), h + 1, r.z1(), "oak_fence", BlockClass::Built);
  } else if (item == "bench") {
    for (int x = r.x; x <= r.x1(); ++x)
      for (int z = r.z; z <= r.z1(); ++z) site.put(x, h + 1, z, "oak_stairs", BlockClass::Built);
  } else if (item == "well") {
    for (int x = r.x; x <= r.x1(); ++x)
      for (int z = r.z; z <= r.z1(); ++z) {
        const bool edge = x == r.x || x == r.x1() || z == r.z || z == r.z1();
        if (edge) site.put(x, h + 1, z, "cobblestone", BlockClass::Built);
      }
    site.put(c.x, h, c.z, "water", BlockClass::Water);
    site.put(r.x, h + 2, r.z, "oak_fence", BlockClass::Built);
    site.put(r.x1(), h + 2, r.z1(), "oak_fence", BlockClass::Built);
    site.put(c.x, h + 3, c.z, "oak_slab", BlockClass::Built);
  } else if (item == "lamppost") {
    for (int y = h + 1; y <= h + 3; ++y) site.put(c.x, y, c.z, "oak_fence", BlockClass::Built);
    site.put(c.x, h + 4, c.z, "lantern", BlockClass::Built);
  } else if (item == "flower_bed") {
    static const char* kFlowers[] = {"poppy", "dandelion", "cornflower", "azure_bluet"};
    int i = 0;
    for (int x = r.x; x <= r.x1(); ++x)
      for (int z = r.z; z <= r.z1(); ++z) {
        site.put(x, h, z, "grass_block", BlockClass::Ground);
        site.put(x, h + 1, z, kFlowers[i++ % 4], BlockClass::Built);
      }
  } else if (item == "market_stall") {
    for (const auto& corner :
         {Point{r.x, r.z}, Point{r.x1(), r.z}, Point{r.x, r.z1()}, Point{r.x1(), r.z1()}})
      for (int y = h + 1; y <= h + 3; ++y)
        site.put(corner.x, y, corner.z, "oak_fence", BlockClass::Built);
    for (int x = r.x; x <= r.x1(); ++x)
      for (int z = r.z; z <= r.z1(); ++z)
        site.put(x, h + 4, z, (x + z) % 2 ? "white_wool" : "red_wool", BlockClass::Built);
    site.put(c.x, h + 1, c.z, "barrel", BlockClass::Built);
  } else if (item == "statue") {
    for (int x = r.x; x <= r.x1(); ++x)
      for (int z = r.z; z <= r.z1(); ++z)
        site.put(x, h + 1, z, "stone_brick_slab", BlockClass::Built);
    for (int y = h + 1; y <= h + 3; ++y)
      site.put(c.x, y, c.z, "chiseled_stone_bricks", BlockClass::Built);
  } else if (item == "woodpile") {
    for (int x = r.x; x <= r.x1(); ++x)
      for (int z = r.z; z <= r.z1(); ++z)
        for (int y = h + 1; y <= h + 2; ++y) site.put(x, y, z, "oak_log", BlockClass::Built);
  } else if (item == "cart") {
    for (int x = r.x; x <= r.x1(); ++x)
      for (int z = r.z; z <= r.z1(); ++z) site.put(x, h + 1, z, "oak_planks", BlockClass::Built);
    site.put(r.x, h + 1, r.z, "oak_fence", BlockClass::Built);
    site.put(r.x1(), h + 1, r.z1(), "oak_fence", BlockClass::Built);
  } else if (item == "fountain") {
    for (int x = r.x; x <= r.x1(); ++x)
      for (int z = r.z; z <= r.z1(); ++z) {
        const bool edge = x == r.x || x == r.x1() || z == r.z || z == r.z1();
        site.put(x, h + 1, z, edge ? "polished_andesite" : "water", BlockClass::Built);
      }
    site.put(c.x, h + 2, c.z, "water", BlockClass::Water);
  } else if (item == "shrine") {
    for (int x = r.x; x <= r.x1(); ++x)
      for (int z = r.z; z <= r.z1(); ++z)
        site.put(x, h + 1, z, "stone_brick_slab", BlockClass::Built);
    site.put(c.x, h + 2, c.z, "lantern", BlockClass::Built);
  } else {
    site.put(c.x, h + 1, c.z, "barrel", BlockClass::Built);
  }
}

void BuildWatchtower(SiteWriter& site, const Blueprint& bp, const Plot& plot, Rng& rng)
{
  (void)bp;
  (void)rng;
  const Rect r = plot.rect;
  const int anchor = plot.anchorHeight;
  const int top = anchor + 11;

  for (int x = r.x; x <= r.x1(); ++x)
    for (int z = r.z; z <= r.z1(); ++z) site.levelColumn(x, z, anchor);

  for (int x = r.x; x <= r.x1(); ++x) {
    for (int z = r.z; z <= r.z1(); ++z) {
      const bool edge = x == r.x || x == r.x1() || z == r.z || z == r.z1();
      site.put(x, anchor + 1, z, "stone_bricks", BlockClass::Built);
      if (edge)
        for (int y = anchor + 2; y <= top; ++y)
          site.put(x, y, z, "stone_bricks", BlockClass::Built);
      site.put(x, top + 1, z, "stone_bricks", BlockClass::Built);
      if (edge && (x + z) % 2 == 0)
        site.put(x, top + 2, z, "stone_brick_wall", BlockClass::Built);
    }
  }
  // Door and interior ladder.
  const int side = RoadSide(plot);
  const Point c = r.center();
  int doorX = c.x, doorZ = c.z;
  if (side == 0) doorZ = r.z;
  else if (side == 2) doorZ = r.z1();
  else if (side == 3) doorX = r.x;
  else doorX = r.x1();
  site.putAir(doorX, anchor + 2, doorZ);
  site.putAir(doorX, anchor + 3, doorZ);
  for (int y = anchor + 2; y <= top; ++y) site.put(c.x, y, c.z, "ladder", BlockClass::Built);
}

}  // namespace citygen::detail
