#include "PlacementInternal.hpp"

#include <algorithm>
#include <queue>

namespace citygen {

namespace {

// Mask of cells no farm may claim: anything planned for another structure,
// water, and standing trees.
BoolMap ReservedMask(const Blueprint& bp)
{
  const int w = bp.width(), d = bp.depth();
  BoolMap reserved(w, d, 0);
  for (int x = 0; x < w; ++x) {
    for (int z = 0; z < d; ++z) {
      bool r = bp.plotMap().at(x, z) || bp.wallMap().at(x, z) || bp.terrain().water.at(x, z) ||
               bp.terrain().structure.at(x, z) || bp.terrain().tree.at(x, z);
      if (!r) {
        // Roads are realized one cell wider than the blueprint line.
        for (int dx = -1; dx <= 1 && !r; ++dx)
          for (int dz = -1; dz <= 1 && !r; ++dz) {
            const int nx = x + dx, nz = z + dz;
            if (nx >= 0 && nx < w && nz >= 0 && nz < d && bp.roadMap().at(nx, nz)) r = true;
          }
      }
      reserved.at(x, z) = r ? 1 : 0;
    }
  }
  return reserved;
}

}  // namespace

std::vector<FarmRegion> ExpandFarms(const Blueprint& bp, const PlacementConfig& cfg, Rng& rng)
{
  const int w = bp.width(), d = bp.depth();
  const IntMap& height = bp.terrain().height;
  BoolMap reserved = ReservedMask(bp);
  BoolMap claimed(w, d, 0);  // cells taken by earlier farms in this pass

  std::vector<FarmRegion> regions;
  for (const Plot& plot : bp.plots()) {
    if (plot.kind != PlotKind::Farm) continue;
    FarmRegion region;
    region.plotId = plot.id;
    region.crop = plot.variant;

    BoolMap inRegion(w, d, 0);
    auto claim = [&](int x, int z) {
      if (inRegion.at(x, z)) return;
      inRegion.at(x, z) = 1;
      claimed.at(x, z) = 1;
      region.cells.push_back(Point{x, z});
      region.levelCount[height.at(x, z)]++;
    };

    // Initial blobs inside the assigned plot.
    const int nBlobs = rng.rangeInt(cfg.farmBlobsMin, cfg.farmBlobsMax);
    for (int b = 0; b < nBlobs; ++b) {
      const int cx = rng.rangeInt(plot.rect.x, plot.rect.x1());
      const int cz = rng.rangeInt(plot.rect.z, plot.rect.z1());
      const int radius = rng.rangeInt(2, 3);
      for (int x = cx - radius; x <= cx + radius; ++x) {
        for (int z = cz - radius; z <= cz + radius; ++z) {
          if (!plot.rect.contains(x, z)) continue;
          if ((x - cx) * (x - cx) + (z - cz) * (z - cz) > radius * radius) continue;
          if (bp.terrain().water.at(x, z) || bp.terrain().tree.at(x, z)) continue;
          claim(x, z);
        }
      }
    }

    // Per-height dilation: a cell joins only next to a farm cell of its own
    // terrain height, through unreserved ground. This is what makes farms
    // hug the contours.
    for (int round = 0; round < cfg.farmRounds; ++round) {
      std::vector<Point> additions;
      const std::size_t frontierEnd = region.cells.size();
      for (std::size_t i = 0; i < frontierEnd; ++i) {
        const Point c = region.cells[i];
        const int h = height.at(c.x, c.z);
        for (const auto& dir : kDir4) {
          const int nx = c.x + dir[0], nz = c.z + dir[1];
          if (nx < 0 || nx >= w || nz < 0 || nz >= d) continue;
          if (inRegion.at(nx, nz) || claimed.at(nx, nz)) continue;
          if (height.at(nx, nz) != h) continue;
          // The farm's own plot is exempt from the plot mask; everything
          // reserved for another structure blocks growth.
          if (plot.rect.contains(nx, nz)) {
            if (bp.terrain().water.at(nx, nz) || bp.terrain().tree.at(nx, nz) ||
                bp.terrain().structure.at(nx, nz))
              continue;
          } else if (reserved.at(nx, nz)) {
            continue;
          }
          additions.push_back(Point{nx, nz});
        }
      }
      if (additions.empty()) break;
      std::sort(additions.begin(), additions.end());
      additions.erase(std::unique(additions.begin(), additions.end()), additions.end());
      for (const Point& p : additions) claim(p.x, p.z);
    }

    std::sort(region.cells.begin(), region.cells.end());
    regions.push_back(std::move(region));
  }
  return regions;
}

namespace detail {

void BuildFarmRegion(SiteWriter& site, const Blueprint& bp, const FarmRegion& region, Rng& rng)
{
  const IntMap& height = bp.terrain().height;
  const std::string crop = region.crop.empty() ? "wheat" : region.crop;
  for (const Point& c : region.cells) {
    const int h = height.at(c.x, c.z);
    // Sparse water channels keep the farmland hydrated.
    const bool channel = ((c.x * 7 + c.z * 13) % 23 == 0);
    if (channel) {
      site.put(c.x, h, c.z, "water", BlockClass::Water);
      continue;
    }
    site.put(c.x, h, c.z, "farmland", BlockClass::Built);
    site.put(c.x, h + 1, c.z, crop, BlockClass::Built);
  }
  (void)rng;
}

}  // namespace detail

long long FinalizeFarmBorders(VoxelWorld& world, const BuildArea& area,
                              const std::vector<FarmRegion>& regions, const Blueprint& bp)
{
  const int w = bp.width(), d = bp.depth();
  detail::SiteWriter site{&world, &area};

  BoolMap farm(w, d, 0);
  for (const FarmRegion& r : regions)
    for (const Point& c : r.cells) farm.at(c.x, c.z) = 1;

  // Borders go around the union, so adjacent farms merge under one fence.
  const BoolMap reserved = ReservedMask(bp);
  for (int x = 0; x < w; ++x) {
    for (int z = 0; z < d; ++z) {
      if (farm.at(x, z)) continue;
      bool adjacent = false;
      for (const auto& dir : kDir8) {
        const int nx = x + dir[0], nz = z + dir[1];
        if (nx >= 0 && nx < w && nz >= 0 && nz < d && farm.at(nx, nz)) adjacent = true;
      }
      if (!adjacent) continue;
      if (reserved.at(x, z)) continue;  // no fence across roads or other plots
      const int h = bp.terrain().height.at(x, z);
      site.put(x, h + 1, z, "oak_fence", BlockClass::Built);
    }
  }
  return site.placed;
}

}  // namespace citygen
