#include "citygen/World.hpp"

#include "citygen/Rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

namespace citygen {

namespace {

const char* kBiomeNames[] = {"plains", "jungle", "desert", "taiga", "forest"};

double Fade(double t) { return t * t * t * (t * (t * 6 - 15) + 10); }
double Lerp(double a, double b, double t) { return a + (b - a) * t; }

// Lattice value in [0,1) keyed on (seed, lattice coords).
double LatticeValue(std::uint64_t seed, int xi, int zi)
{
  return static_cast<double>(HashCoords(seed, xi, zi) >> 11) * 0x1.0p-53;
}

double ValueNoise(std::uint64_t seed, double x, double z)
{
  const int x0 = static_cast<int>(std::floor(x));
  const int z0 = static_cast<int>(std::floor(z));
  const double sx = Fade(x - x0);
  const double sz = Fade(z - z0);
  const double n00 = LatticeValue(seed, x0, z0);
  const double n10 = LatticeValue(seed, x0 + 1, z0);
  const double n01 = LatticeValue(seed, x0, z0 + 1);
  const double n11 = LatticeValue(seed, x0 + 1, z0 + 1);
  return Lerp(Lerp(n00, n10, sx), Lerp(n01, n11, sx), sz);
}

// 4-octave fbm normalized to [0,1].
double Fbm(std::uint64_t seed, double x, double z)
{
  double value = 0.0, amplitude = 0.5, frequency = 1.0, norm = 0.0;
  for (int i = 0; i < 4; ++i) {
    value += amplitude * ValueNoise(seed + 0x1234567u * static_cast<std::uint64_t>(i + 1),
                                    x * frequency, z * frequency);
    norm += amplitude;
    frequency *= 2.0;
    amplitude *= 0.5;
  }
  return value / norm;
}

struct BiomeParams {
  double treeDensity;
  int trunkMin, trunkMax;
  const char* wood;
  const char* altWood;  // second species mixed in, or nullptr
  const char* topBlock;
  const char* fillBlock;
  int leafRadius;
};

BiomeParams ParamsFor(Biome b)
{
  switch (b) {
  case Biome::Plains: return {0.004, 4, 6, "oak", nullptr, "grass_block", "dirt", 2};
  case Biome::Jungle: return {0.05, 8, 13, "jungle", nullptr, "grass_block", "dirt", 3};
  case Biome::Desert: return {0.0, 0, 0, "oak", nullptr, "sand", "sand", 0};
  case Biome::Taiga: return {0.015, 6, 9, "spruce", nullptr, "grass_block", "dirt", 2};
  case Biome::Forest: return {0.02, 4, 7, "oak", "birch", "grass_block", "dirt", 2};
  }
  return {0.0, 0, 0, "oak", nullptr, "grass_block", "dirt", 2};
}

// Little-endian primitives.
void PutU16(std::string& out, std::uint16_t v)
{
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}
void PutU32(std::string& out, std::uint32_t v)
{
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void PutU64(std::string& out, std::uint64_t v)
{
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
public:
  Reader(const std::string& bytes) : bytes_(bytes) {}

  std::uint8_t u8()
  {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint16_t u16()
  {
    need(2);
    std::uint16_t v = 0;
    for (int i = 0; i < 2; ++i) v |= static_cast<std::uint16_t>(static_cast<std::uint8_t>(bytes_[pos_++])) << (8 * i);
    return v;
  }
  std::uint32_t u32()
  {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes_[pos_++])) << (8 * i);
    return v;
  }
  std::uint64_t u64()
  {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes_[pos_++])) << (8 * i);
    return v;
  }
  std::string str(std::size_t n)
  {
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool atEnd() const { return pos_ == bytes_.size(); }

private:
  void need(std::size_t n) const
  {
    if (pos_ + n > bytes_.size())
      throw FormatError(FormatError::Kind::Truncated, "world file truncated");
  }
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

constexpr char kMagic[4] = {'S', 'F', 'W', '1'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

const char* BiomeName(Biome b) { return kBiomeNames[static_cast<int>(b)]; }

bool ParseBiome(const std::string& name, Biome* out)
{
  for (int i = 0; i < 5; ++i) {
    if (name == kBiomeNames[i]) {
      *out = static_cast<Biome>(i);
      return true;
    }
  }
  return false;
}

VoxelWorld::VoxelWorld(int xSize, int ySize, int zSize, std::uint64_t seed, int seaLevel)
    : xSize_(xSize),
      ySize_(ySize),
      zSize_(zSize),
      seed_(seed),
      seaLevel_(seaLevel),
      blocks_(static_cast<std::size_t>(xSize) * ySize * zSize, 0),
      biomes_(static_cast<std::size_t>(xSize) * zSize, 0)
{
  if (xSize <= 0 || ySize <= 0 || zSize <= 0) throw BoundsError("world dims must be positive");
  palette_.push_back(BlockId{"air", BlockClass::Air});
}

std::uint16_t VoxelWorld::registerBlock(const std::string& name, BlockClass cls)
{
  for (std::size_t i = 0; i < palette_.size(); ++i) {
    if (palette_[i].name == name) return static_cast<std::uint16_t>(i);
  }
  palette_.push_back(BlockId{name, cls});
  return static_cast<std::uint16_t>(palette_.size() - 1);
}

bool VoxelWorld::findBlock(const std::string& name, std::uint16_t* out) const
{
  for (std::size_t i = 0; i < palette_.size(); ++i) {
    if (palette_[i].name == name) {
      *out = static_cast<std::uint16_t>(i);
      return true;
    }
  }
  return false;
}

std::uint16_t VoxelWorld::getIndex(int x, int y, int z) const { return blocks_[cellIndex(x, y, z)]; }

void VoxelWorld::setIndex(int x, int y, int z, std::uint16_t idx)
{
  if (idx >= palette_.size()) throw BoundsError("palette index not registered");
  blocks_[cellIndex(x, y, z)] = idx;
}

Biome VoxelWorld::biomeAt(int x, int z) const
{
  if (x < 0 || x >= xSize_ || z < 0 || z >= zSize_) throw BoundsError("biome access out of bounds");
  return static_cast<Biome>(biomes_[static_cast<std::size_t>(x) * zSize_ + z]);
}

void VoxelWorld::setBiome(int x, int z, Biome b)
{
  if (x < 0 || x >= xSize_ || z < 0 || z >= zSize_) throw BoundsError("biome access out of bounds");
  biomes_[static_cast<std::size_t>(x) * zSize_ + z] = static_cast<std::uint8_t>(b);
}

std::uint64_t VoxelWorld::contentHash() const
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ull;
    }
  };
  feed(&xSize_, sizeof(xSize_));
  feed(&ySize_, sizeof(ySize_));
  feed(&zSize_, sizeof(zSize_));
  feed(&seaLevel_, sizeof(seaLevel_));
  for (const BlockId& b : palette_) {
    feed(b.name.data(), b.name.size());
    feed(&b.cls, sizeof(b.cls));
  }
  feed(blocks_.data(), blocks_.size() * sizeof(std::uint16_t));
  feed(biomes_.data(), biomes_.size());
  return h;
}

bool operator==(const VoxelWorld& a, const VoxelWorld& b)
{
  return a.xSize_ == b.xSize_ && a.ySize_ == b.ySize_ && a.zSize_ == b.zSize_ &&
         a.seed_ == b.seed_ && a.seaLevel_ == b.seaLevel_ && a.palette_ == b.palette_ &&
         a.blocks_ == b.blocks_ && a.biomes_ == b.biomes_;
}

void ValidateBuildArea(const VoxelWorld& world, const BuildArea& area)
{
  if (area.width <= 0 || area.depth <= 0 || area.originX < 0 || area.originZ < 0 ||
      area.originX + area.width > world.xSize() || area.originZ + area.depth > world.zSize()) {
    throw BoundsError("build area outside world bounds");
  }
}

VoxelWorld SynthesizeTerrain(std::uint64_t seed, int xSize, int ySize, int zSize, Biome biome,
                             double roughness)
{
  if (xSize < 16 || ySize < 16 || zSize < 16)
    throw BoundsError("terrain dims must each be >= 16");
  if (!std::isfinite(roughness)) throw BoundsError("roughness must be finite");
  roughness = std::clamp(roughness, 0.0, 1.0);

  const int seaLevel = ySize / 3;
  VoxelWorld world(xSize, ySize, zSize, seed, seaLevel);

  const BiomeParams bp = ParamsFor(biome);
  const std::uint16_t stone = world.registerBlock("stone", BlockClass::Ground);
  const std::uint16_t fill = world.registerBlock(bp.fillBlock, BlockClass::Ground);
  const std::uint16_t top = world.registerBlock(bp.topBlock, BlockClass::Ground);
  const std::uint16_t water = world.registerBlock("water", BlockClass::Water);

  const double base = 0.38 * ySize;
  const double amp = roughness * 0.45 * ySize;
  const double freq = 1.0 / 48.0;

  // Ground columns.
  std::vector<int> ground(static_cast<std::size_t>(xSize) * zSize, 0);
  for (int x = 0; x < xSize; ++x) {
    for (int z = 0; z < zSize; ++z) {
      const double n = Fbm(seed, x * freq, z * freq);
      int h = static_cast<int>(std::lround(base + amp * (n - 0.5) * 2.0));
      h = std::clamp(h, 1, ySize - 16);
      ground[static_cast<std::size_t>(x) * zSize + z] = h;
      world.setBiome(x, z, biome);
      for (int y = 0; y <= h; ++y) {
        std::uint16_t idx = stone;
        if (y == h) idx = top;
        else if (y >= h - 3) idx = fill;
        world.setIndex(x, y, z, idx);
      }
      for (int y = h + 1; y <= seaLevel && y < ySize; ++y) world.setIndex(x, y, z, water);
    }
  }

  if (bp.treeDensity <= 0.0) return world;

  const std::uint16_t logA = world.registerBlock(std::string(bp.wood) + "_log", BlockClass::FoliageLog);
  const std::uint16_t leafA =
      world.registerBlock(std::string(bp.wood) + "_leaves", BlockClass::FoliageLeaf);
  std::uint16_t logB = logA, leafB = leafA;
  if (bp.altWood) {
    logB = world.registerBlock(std::string(bp.altWood) + "_log", BlockClass::FoliageLog);
    leafB = world.registerBlock(std::string(bp.altWood) + "_leaves", BlockClass::FoliageLeaf);
  }

  for (int x = 2; x < xSize - 2; ++x) {
    for (int z = 2; z < zSize - 2; ++z) {
      const int h = ground[static_cast<std::size_t>(x) * zSize + z];
      if (h < seaLevel) continue;  // no trees in water
      const std::uint64_t roll = HashCoords(seed ^ 0x7265657353ull, x, z);
      if (static_cast<double>(roll >> 11) * 0x1.0p-53 >= bp.treeDensity) continue;

      // Keep trunks from hugging each other; scan order makes this exact.
      bool crowded = false;
      for (int dx = -1; dx <= 1 && !crowded; ++dx)
        for (int dz = -1; dz <= 1 && !crowded; ++dz) {
          if (dx == 0 && dz == 0) continue;
          const int gh = ground[static_cast<std::size_t>(x + dx) * zSize + (z + dz)];
          if (gh + 1 < ySize && world.classAt(x + dx, gh + 1, z + dz) == BlockClass::FoliageLog)
            crowded = true;
        }
      if (crowded) continue;

      const std::uint64_t h2 = Mix64(roll);
      const int trunkH = bp.trunkMin + static_cast<int>(h2 % (bp.trunkMax - bp.trunkMin + 1));
      const bool alt = bp.altWood && ((h2 >> 8) & 1);
      const std::uint16_t logIdx = alt ? logB : logA;
      const std::uint16_t leafIdx = alt ? leafB : leafA;
      const int topY = std::min(h + trunkH, ySize - 3);
      for (int y = h + 1; y <= topY; ++y) world.setIndex(x, y, z, logIdx);
      // Leaf blob around the crown.
      for (int y = topY - 2; y <= topY + 1 && y < ySize; ++y) {
        const int r = (y >= topY) ? 1 : bp.leafRadius;
        for (int dx = -r; dx <= r; ++dx) {
          for (int dz = -r; dz <= r; ++dz) {
            if (std::abs(dx) == r && std::abs(dz) == r && r > 1) continue;  // clip corners
            const int lx = x + dx, lz = z + dz;
            if (lx < 0 || lx >= xSize || lz < 0 || lz >= zSize) continue;
            if (world.classAt(lx, y, lz) == BlockClass::Air) world.setIndex(lx, y, lz, leafIdx);
          }
        }
      }
    }
  }
  return world;
}

void ExportWorld(const VoxelWorld& world, const std::string& path)
{
  std::string out;
  out.append(kMagic, 4);
  PutU32(out, kVersion);
  PutU32(out, static_cast<std::uint32_t>(world.xSize()));
  PutU32(out, static_cast<std::uint32_t>(world.ySize()));
  PutU32(out, static_cast<std::uint32_t>(world.zSize()));
  PutU64(out, world.seed());
  PutU32(out, static_cast<std::uint32_t>(world.seaLevel()));
  PutU32(out, static_cast<std::uint32_t>(world.palette().size()));
  for (const BlockId& b : world.palette()) {
    PutU32(out, static_cast<std::uint32_t>(b.name.size()));
    out.append(b.name);
    out.push_back(static_cast<char>(b.cls));
  }
  for (int x = 0; x < world.xSize(); ++x)
    for (int z = 0; z < world.zSize(); ++z)
      out.push_back(static_cast<char>(static_cast<std::uint8_t>(world.biomeAt(x, z))));

  // Per-column RLE over y, columns in row-major x-then-z order.
  for (int x = 0; x < world.xSize(); ++x) {
    for (int z = 0; z < world.zSize(); ++z) {
      std::vector<std::pair<std::uint16_t, std::uint16_t>> runs;  // (count, index)
      for (int y = 0; y < world.ySize(); ++y) {
        const std::uint16_t idx = world.getIndex(x, y, z);
        if (!runs.empty() && runs.back().second == idx && runs.back().first < 0xffff) {
          ++runs.back().first;
        } else {
          runs.emplace_back(1, idx);
        }
      }
      PutU16(out, static_cast<std::uint16_t>(runs.size()));
      for (const auto& [count, idx] : runs) {
        PutU16(out, count);
        PutU16(out, idx);
      }
    }
  }

  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("write failed: " + path);
}

VoxelWorld ImportWorld(const std::string& path)
{
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for reading: " + path);
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

  Reader r(bytes);
  const std::string magic = r.str(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0)
    throw FormatError(FormatError::Kind::BadMagic, "not a world file (bad magic)");
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw FormatError(FormatError::Kind::BadVersion,
                      "unsupported world file version " + std::to_string(version));
  const std::uint32_t xs = r.u32();
  const std::uint32_t ys = r.u32();
  const std::uint32_t zs = r.u32();
  const std::uint64_t seed = r.u64();
  const std::uint32_t seaLevel = r.u32();
  if (xs == 0 || ys == 0 || zs == 0 || xs > 65535 || ys > 65535 || zs > 65535)
    throw FormatError(FormatError::Kind::Malformed, "implausible world dimensions");

  VoxelWorld world(static_cast<int>(xs), static_cast<int>(ys), static_cast<int>(zs), seed,
                   static_cast<int>(seaLevel));
  world.palette_.clear();

  const std::uint32_t paletteCount = r.u32();
  if (paletteCount == 0)
    throw FormatError(FormatError::Kind::BadPalette, "empty palette");
  for (std::uint32_t i = 0; i < paletteCount; ++i) {
    const std::uint32_t len = r.u32();
    if (len > 4096) throw FormatError(FormatError::Kind::BadPalette, "palette name too long");
    std::string name = r.str(len);
    const std::uint8_t cls = r.u8();
    if (cls >= kBlockClassCount)
      throw FormatError(FormatError::Kind::BadPalette,
                        "unknown block class " + std::to_string(cls) + " for '" + name + "'");
    world.palette_.push_back(BlockId{std::move(name), static_cast<BlockClass>(cls)});
  }

  for (std::uint32_t x = 0; x < xs; ++x)
    for (std::uint32_t z = 0; z < zs; ++z) {
      const std::uint8_t b = r.u8();
      if (b > static_cast<std::uint8_t>(Biome::Forest))
        throw FormatError(FormatError::Kind::Malformed, "unknown biome id");
      world.setBiome(static_cast<int>(x), static_cast<int>(z), static_cast<Biome>(b));
    }

  for (std::uint32_t x = 0; x < xs; ++x) {
    for (std::uint32_t z = 0; z < zs; ++z) {
      const std::uint16_t runCount = r.u16();
      std::uint32_t y = 0;
      for (std::uint16_t i = 0; i < runCount; ++i) {
        const std::uint16_t count = r.u16();
        const std::uint16_t idx = r.u16();
        if (idx >= world.palette_.size())
          throw FormatError(FormatError::Kind::BadPalette, "block index outside palette");
        if (y + count > ys)
          throw FormatError(FormatError::Kind::Malformed, "column runs exceed world height");
        for (std::uint16_t k = 0; k < count; ++k)
          world.setIndex(static_cast<int>(x), static_cast<int>(y++), static_cast<int>(z), idx);
      }
      if (y != ys) throw FormatError(FormatError::Kind::Malformed, "column runs short of height");
    }
  }
  if (!r.atEnd()) throw FormatError(FormatError::Kind::Malformed, "trailing bytes after payload");
  return world;
}

}  // namespace citygen
