#include "doctest.h"

#include "citygen/World.hpp"
#include "helpers.hpp"

#include <cstdio>
#include <fstream>

using namespace citygen;
using namespace citygen::testutil;

namespace {

// Fraction of surface columns whose column contains a trunk block.
double TrunkColumnFraction(const VoxelWorld& w)
{
  int trunkCols = 0;
  for (int x = 0; x < w.xSize(); ++x) {
    for (int z = 0; z < w.zSize(); ++z) {
      for (int y = 0; y < w.ySize(); ++y) {
        if (w.classAt(x, y, z) == BlockClass::FoliageLog) {
          ++trunkCols;
          break;
        }
      }
    }
  }
  return static_cast<double>(trunkCols) / (w.xSize() * w.zSize());
}

std::string ReadFileBytes(const std::string& path)
{
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f);
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("get after set returns the set value; out of bounds is an error")
{
  VoxelWorld w = FlatWorld(16, 16);
  w.set(3, 4, 5, "stone", BlockClass::Ground);
  CHECK(w.get(3, 4, 5).name == "stone");
  CHECK_THROWS_AS((void)w.get(16, 0, 0), BoundsError);
  CHECK_THROWS_AS(w.set(0, -1, 0, "stone", BlockClass::Ground), BoundsError);
}

TEST_CASE("terrain synthesis rejects tiny dims")
{
  CHECK_THROWS_AS(SynthesizeTerrain(1, 8, 64, 128, Biome::Plains, 0.2), BoundsError);
}

TEST_CASE("plains trees are sparse, jungle strictly denser on the same seed")
{
  const VoxelWorld plains = SynthesizeTerrain(1, 128, 64, 128, Biome::Plains, 0.2);
  const VoxelWorld jungle = SynthesizeTerrain(1, 128, 64, 128, Biome::Jungle, 0.2);
  const double plainsFrac = TrunkColumnFraction(plains);
  const double jungleFrac = TrunkColumnFraction(jungle);
  CHECK(plainsFrac < 0.02);
  CHECK(jungleFrac > plainsFrac);
}

TEST_CASE("synthesis is deterministic, exports byte-identical")
{
  const VoxelWorld a = SynthesizeTerrain(7, 32, 32, 48, Biome::Forest, 0.4);
  const VoxelWorld b = SynthesizeTerrain(7, 32, 32, 48, Biome::Forest, 0.4);
  CHECK(a.contentHash() == b.contentHash());
  CHECK(a == b);

  const std::string pathA = TempPath("det_a.sfw");
  const std::string pathB = TempPath("det_b.sfw");
  ExportWorld(a, pathA);
  ExportWorld(b, pathB);
  CHECK(ReadFileBytes(pathA) == ReadFileBytes(pathB));
}

TEST_CASE("export/import round trip is cell-for-cell identical")
{
  VoxelWorld w = SynthesizeTerrain(3, 32, 40, 24, Biome::Taiga, 0.6);
  w.set(5, 30, 6, "cobblestone", BlockClass::Built);
  const std::string path = TempPath("roundtrip.sfw");
  ExportWorld(w, path);
  const VoxelWorld back = ImportWorld(path);
  CHECK(back == w);
  CHECK(back.get(5, 30, 6).name == "cobblestone");
}

TEST_CASE("smallest world round-trips")
{
  VoxelWorld w(1, 1, 1, 0, 0);
  const std::string path = TempPath("tiny.sfw");
  ExportWorld(w, path);
  CHECK(ImportWorld(path) == w);
}

TEST_CASE("import failure cases are distinct")
{
  const std::string path = TempPath("bad.sfw");

  SUBCASE("bad magic")
  {
    std::ofstream(path, std::ios::binary) << "NOPE rest of file";
    try {
      ImportWorld(path);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.kind == FormatError::Kind::BadMagic);
    }
  }
  SUBCASE("unsupported version")
  {
    std::string bytes = ReadFileBytes([&] {
      const std::string p = TempPath("ver.sfw");
      ExportWorld(FlatWorld(16, 16), p);
      return p;
    }());
    bytes[4] = 9;  // version little-endian low byte
    std::ofstream(path, std::ios::binary) << bytes;
    try {
      ImportWorld(path);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.kind == FormatError::Kind::BadVersion);
    }
  }
  SUBCASE("unknown palette class byte")
  {
    const std::string p = TempPath("pal.sfw");
    ExportWorld(FlatWorld(16, 16), p);
    std::string bytes = ReadFileBytes(p);
    // First palette entry is "air": count at 32, then len=3 + "air" + class.
    const std::size_t classPos = 4 + 4 + 12 + 8 + 4 + 4 + 4 + 3;
    bytes[classPos] = 120;
    std::ofstream(path, std::ios::binary) << bytes;
    try {
      ImportWorld(path);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.kind == FormatError::Kind::BadPalette);
    }
  }
  SUBCASE("truncated payload")
  {
    const std::string p = TempPath("trunc_src.sfw");
    ExportWorld(FlatWorld(16, 16), p);
    std::string bytes = ReadFileBytes(p);
    bytes.resize(bytes.size() / 2);
    std::ofstream(path, std::ios::binary) << bytes;
    try {
      ImportWorld(path);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.kind == FormatError::Kind::Truncated);
    }
  }
}

TEST_CASE("set then export/import then get")
{
  VoxelWorld w = FlatWorld(16, 16);
  w.set(1, 2, 3, "oak_planks", BlockClass::Built);
  const std::string path = TempPath("setget.sfw");
  ExportWorld(w, path);
  CHECK(ImportWorld(path).get(1, 2, 3).name == "oak_planks");
}
