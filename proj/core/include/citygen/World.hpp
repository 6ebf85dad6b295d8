#pragma once

#include "citygen/Error.hpp"
#include "citygen/Geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace citygen {

enum class BlockClass : std::uint8_t {
  Air = 0,
  Ground = 1,
  Water = 2,
  Lava = 3,
  FoliageLog = 4,
  FoliageLeaf = 5,
  Built = 6,
};

constexpr int kBlockClassCount = 7;

enum class Biome : std::uint8_t {
  Plains = 0,
  Jungle = 1,
  Desert = 2,
  Taiga = 3,
  Forest = 4,
};

const char* BiomeName(Biome b);
bool ParseBiome(const std::string& name, Biome* out);

// A palette entry: a namespaced block name plus its behavioural class.
struct BlockId {
  std::string name;
  BlockClass cls = BlockClass::Air;

  friend bool operator==(const BlockId& a, const BlockId& b)
  {
    return a.name == b.name && a.cls == b.cls;
  }
};

// Dense voxel grid with a closed palette. Index 0 is always air. Worlds are
// plain values: copy to snapshot, hand between threads freely, one writer at
// a time.
class VoxelWorld {
public:
  VoxelWorld() = default;
  VoxelWorld(int xSize, int ySize, int zSize, std::uint64_t seed, int seaLevel);

  int xSize() const { return xSize_; }
  int ySize() const { return ySize_; }
  int zSize() const { return zSize_; }
  std::uint64_t seed() const { return seed_; }
  int seaLevel() const { return seaLevel_; }

  bool inBounds(int x, int y, int z) const
  {
    return x >= 0 && x < xSize_ && y >= 0 && y < ySize_ && z >= 0 && z < zSize_;
  }

  // Registers (or finds) a palette entry; the palette is closed, every stored
  // index refers to a registered entry.
  std::uint16_t registerBlock(const std::string& name, BlockClass cls);
  // Palette index lookup by name; returns false if not registered.
  bool findBlock(const std::string& name, std::uint16_t* out) const;

  const std::vector<BlockId>& palette() const { return palette_; }

  std::uint16_t getIndex(int x, int y, int z) const;
  void setIndex(int x, int y, int z, std::uint16_t idx);

  const BlockId& get(int x, int y, int z) const { return palette_[getIndex(x, y, z)]; }
  BlockClass classAt(int x, int y, int z) const { return palette_[getIndex(x, y, z)].cls; }
  void set(int x, int y, int z, const std::string& name, BlockClass cls)
  {
    setIndex(x, y, z, registerBlock(name, cls));
  }

  Biome biomeAt(int x, int z) const;
  void setBiome(int x, int z, Biome b);

  // FNV-1a over the block index array; equal hashes on equal content.
  std::uint64_t contentHash() const;

  friend bool operator==(const VoxelWorld& a, const VoxelWorld& b);

private:
  friend VoxelWorld ImportWorld(const std::string& path);

  std::size_t cellIndex(int x, int y, int z) const
  {
    if (!inBounds(x, y, z)) throw BoundsError("voxel access out of bounds");
    return (static_cast<std::size_t>(x) * zSize_ + z) * ySize_ + y;
  }

  int xSize_ = 0;
  int ySize_ = 0;
  int zSize_ = 0;
  std::uint64_t seed_ = 0;
  int seaLevel_ = 0;
  std::vector<std::uint16_t> blocks_;   // y-fastest, then z, then x
  std::vector<std::uint8_t> biomes_;    // xSize * zSize
  std::vector<BlockId> palette_;
};

// Horizontal rectangle of the world in which the settlement is generated.
struct BuildArea {
  int originX = 0;
  int originZ = 0;
  int width = 0;
  int depth = 0;
};

// Throws BoundsError if the area does not lie fully inside the world.
void ValidateBuildArea(const VoxelWorld& world, const BuildArea& area);

// Seeded synthetic terrain: layered value noise keyed on (seed, coordinates),
// water below sea level, biome-dependent tree cover. Identical inputs yield
// identical worlds on every platform.
VoxelWorld SynthesizeTerrain(std::uint64_t seed, int xSize, int ySize, int zSize, Biome biome,
                             double roughness);

// Versioned chunked run-length world format, magic "SFW1". See README for the
// byte layout. Round trips are bit-exact.
void ExportWorld(const VoxelWorld& world, const std::string& path);
VoxelWorld ImportWorld(const std::string& path);

}  // namespace citygen
