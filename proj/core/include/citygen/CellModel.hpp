#pragma once

#include "citygen/Error.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace citygen {

// Per-face tags used when matching a model to a cell's neighbourhood.
enum class Socket : std::uint8_t { Wall = 0, Open = 1, Tower = 2 };

const char* SocketName(Socket s);
bool ParseSocket(const std::string& name, Socket* out);

enum class ModelRole : std::uint8_t { Body = 0, Roof = 1, TowerTop = 2 };

// Abstract material slots; the builder resolves them to concrete blocks per
// structure kind and local wood type.
enum class MaterialSlot : std::uint8_t {
  None = 0,  // air
  WallPrimary,
  WallBeam,
  Floor,
  Window,
  Roof,
  Battlement,
  Door,
};

// Prefabricated voxel model. All body models share the same S so they can be
// tiled as square cells; layouts stack them H blocks per level.
struct CellModel {
  std::string id;
  int size = 0;    // S, horizontal extent
  int height = 0;  // H, vertical extent in blocks
  ModelRole role = ModelRole::Body;
  // Faces in order north(-z), east(+x), south(+z), west(-x).
  std::array<Socket, 4> sockets{Socket::Wall, Socket::Wall, Socket::Wall, Socket::Wall};
  // voxels[y][z][x]
  std::vector<std::vector<std::vector<MaterialSlot>>> voxels;

  MaterialSlot at(int x, int y, int z) const { return voxels[y][z][x]; }
};

// Model rotated clockwise by quarter turns; sockets rotate with the voxels.
CellModel RotateModel(const CellModel& m, int quarterTurns);

struct ModelLibrary {
  std::vector<CellModel> models;

  // First model (with rotation) whose body sockets equal the required faces.
  // Returns nullptr when the library cannot satisfy the pattern.
  const CellModel* matchBody(const std::array<Socket, 4>& faces, int* quarterTurns) const;
  const CellModel* byRole(ModelRole role) const;
  const CellModel* byId(const std::string& id) const;
};

// Plain-text voxel model format:
//   model <id>
//   size <S> <H>
//   role body|roof|tower_top
//   sockets <n> <e> <s> <w>
//   palette <char> <slot-name>     (one line per char; '.' is always air)
//   layer <y>                      (then S lines of S palette chars, z-major)
// '#' comments and blank lines are ignored between sections.
CellModel ParseCellModel(const std::string& text);
ModelLibrary LoadModelLibrary(const std::string& dir);

// The built-in socket-complete set shipped under data/models.
ModelLibrary DefaultModelLibrary(const std::string& dataDir);

}  // namespace citygen
