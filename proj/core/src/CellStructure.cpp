#include "PlacementInternal.hpp"

#include <algorithm>
#include <queue>

namespace citygen {

namespace {

bool LayoutConnected(const CellLayout& layout)
{
  int total = 0;
  int start = -1;
  for (int i = 0; i < layout.gridW * layout.gridD; ++i) {
    if (layout.heights[i] > 0) {
      ++total;
      if (start < 0) start = i;
    }
  }
  if (total == 0) return false;
  std::vector<std::uint8_t> seen(layout.heights.size(), 0);
  std::queue<int> q;
  q.push(start);
  seen[start] = 1;
  int count = 1;
  while (!q.empty()) {
    const int cur = q.front();
    q.pop();
    const int ci = cur % layout.gridW, cj = cur / layout.gridW;
    for (const auto& dir : kDir4) {
      const int ni = ci + dir[0], nj = cj + dir[1];
      if (ni < 0 || ni >= layout.gridW || nj < 0 || nj >= layout.gridD) continue;
      const int n = nj * layout.gridW + ni;
      if (seen[n] || layout.heights[n] == 0) continue;
      seen[n] = 1;
      ++count;
      q.push(n);
    }
  }
  return count == total;
}

}  // namespace

CellLayout MakeCellLayout(const Plot& plot, const PlacementConfig& cfg, Rng& rng)
{
  CellLayout layout;
  layout.gridW = std::max(1, (plot.rect.w - 2) / cfg.cellSize);
  layout.gridD = std::max(1, (plot.rect.d - 2) / cfg.cellSize);
  layout.heights.assign(static_cast<std::size_t>(layout.gridW) * layout.gridD, 0);

  const bool church = plot.kind == PlotKind::Church;
  for (int j = 0; j < layout.gridD; ++j)
    for (int i = 0; i < layout.gridW; ++i)
      layout.at(i, j) = church ? rng.rangeInt(2, 3) : rng.rangeInt(1, 2);

  // Knock out some corner cells for non-rectangular shapes, keeping the
  // positive cells one connected component.
  if (layout.gridW * layout.gridD >= 4) {
    const int cornerIdx[4][2] = {{0, 0},
                                 {layout.gridW - 1, 0},
                                 {0, layout.gridD - 1},
                                 {layout.gridW - 1, layout.gridD - 1}};
    for (const auto& c : cornerIdx) {
      if (!rng.chance(0.3)) continue;
      const int saved = layout.at(c[0], c[1]);
      layout.at(c[0], c[1]) = 0;
      if (!LayoutConnected(layout)) layout.at(c[0], c[1]) = saved;
    }
  }

  if (church) {
    // One tower cell, much taller than its surroundings.
    std::vector<int> live;
    for (int i = 0; i < layout.gridW * layout.gridD; ++i)
      if (layout.heights[i] > 0) live.push_back(i);
    const int pick = live[rng.nextBelow(live.size())];
    layout.heights[pick] = cfg.churchTowerLevels;
  }
  return layout;
}

long long BuildCellStructure(VoxelWorld& world, const BuildArea& area, const Plot& plot,
                             const CellLayout& layout, const ModelLibrary& models,
                             const PlacementConfig& cfg, const QualitativeFeatures& features,
                             Rng& rng)
{
  detail::SiteWriter site{&world, &area};
  const detail::MaterialSet mats = detail::MaterialsFor(plot.kind, features, rng);
  const int S = cfg.cellSize;
  const int H = cfg.unitHeight;
  const int anchor = plot.anchorHeight;

  const CellModel* roof = models.byRole(ModelRole::Roof);
  const CellModel* towerTop = models.byRole(ModelRole::TowerTop);
  const CellModel* towerSide = models.byId("tower_side");
  if (!roof || !towerTop || !towerSide)
    throw Error("model library missing roof/tower models");

  const int baseX = plot.rect.x + 1;
  const int baseZ = plot.rect.z + 1;

  auto cellHeight = [&](int i, int j) {
    if (i < 0 || i >= layout.gridW || j < 0 || j >= layout.gridD) return 0;
    return layout.at(i, j);
  };

  auto stamp = [&](const CellModel& m, int originX, int yBase, int originZ) {
    for (int y = 0; y < m.height; ++y)
      for (int z = 0; z < m.size; ++z)
        for (int x = 0; x < m.size; ++x) {
          const MaterialSlot slot = m.at(x, y, z);
          if (slot == MaterialSlot::None) continue;
          site.put(originX + x, yBase + y, originZ + z, detail::SlotBlock(mats, slot),
                   BlockClass::Built);
        }
  };

  // Level the whole plot to the anchor before stacking.
  for (int x = plot.rect.x; x <= plot.rect.x1(); ++x)
    for (int z = plot.rect.z; z <= plot.rect.z1(); ++z) site.levelColumn(x, z, anchor);

  for (int j = 0; j < layout.gridD; ++j) {
    for (int i = 0; i < layout.gridW; ++i) {
      const int h = cellHeight(i, j);
      if (h <= 0) continue;
      // Neighbour heights in face order N(-z), E(+x), S(+z), W(-x).
      const int nbr[4] = {cellHeight(i, j - 1), cellHeight(i + 1, j), cellHeight(i, j + 1),
                          cellHeight(i - 1, j)};
      const int maxNbr = std::max({nbr[0], nbr[1], nbr[2], nbr[3]});
      const bool towerCell = h >= maxNbr + 4;

      const int ox = baseX + i * S;
      const int oz = baseZ + j * S;
      for (int level = 0; level < h; ++level) {
        if (towerCell && level >= maxNbr) {
          stamp(*towerSide, ox, anchor + 1 + level * H, oz);
          continue;
        }
        std::array<Socket, 4> faces;
        for (int f = 0; f < 4; ++f) faces[f] = nbr[f] > level ? Socket::Open : Socket::Wall;
        int rot = 0;
        const CellModel* body = models.matchBody(faces, &rot);
        if (!body) throw Error("no body model matches socket pattern");
        const CellModel rotated = RotateModel(*body, rot);
        stamp(rotated, ox, anchor + 1 + level * H, oz);
      }
      if (towerCell) {
        stamp(*towerTop, ox, anchor + 1 + h * H, oz);
      } else {
        stamp(*roof, ox, anchor + 1 + h * H, oz);
      }
    }
  }

  // Door on the side facing the road, ground level, centre of the footprint
  // edge.
  if (plot.roadAccess) {
    const Point access = *plot.roadAccess;
    const Point center = plot.rect.center();
    const int dx = access.x - center.x, dz = access.z - center.z;
    int doorX = center.x, doorZ = center.z;
    if (std::abs(dx) >= std::abs(dz)) {
      doorX = dx < 0 ? baseX : baseX + layout.gridW * S - 1;
      doorZ = baseZ + (layout.gridD * S) / 2;
    } else {
      doorZ = dz < 0 ? baseZ : baseZ + layout.gridD * S - 1;
      doorX = baseX + (layout.gridW * S) / 2;
    }
    site.put(doorX, anchor + 2, doorZ, mats.door, BlockClass::Built);
    site.putAir(doorX, anchor + 3, doorZ);
  }

  // Furnish each ground-level room: a few distinct items per cell.
  static const char* kFurniture[] = {"barrel",    "crafting_table", "bookshelf", "smoker",
                                     "cauldron", "flower_pot",     "chest",     "lectern"};
  for (int j = 0; j < layout.gridD; ++j) {
    for (int i = 0; i < layout.gridW; ++i) {
      if (cellHeight(i, j) <= 0) continue;
      const int nItems = rng.rangeInt(2, 3);
      const auto picks = rng.sampleIndices(std::size(kFurniture), nItems);
      for (const std::size_t pick : picks) {
        const int fx = baseX + i * S + rng.rangeInt(1, S - 2);
        const int fz = baseZ + j * S + rng.rangeInt(1, S - 2);
        if (site.classAt(fx, anchor + 2, fz) == BlockClass::Air)
          site.put(fx, anchor + 2, fz, kFurniture[pick], BlockClass::Built);
      }
    }
  }
  return site.placed;
}

}  // namespace citygen
