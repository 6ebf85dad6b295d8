#include "citygen/CellModel.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace citygen {

namespace {

const char* kSocketNames[] = {"wall", "open", "tower"};

std::string Trim(std::string s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  return s;
}

MaterialSlot SlotFromName(const std::string& name)
{
  if (name == "air") return MaterialSlot::None;
  if (name == "wall_primary") return MaterialSlot::WallPrimary;
  if (name == "wall_beam") return MaterialSlot::WallBeam;
  if (name == "floor") return MaterialSlot::Floor;
  if (name == "window") return MaterialSlot::Window;
  if (name == "roof") return MaterialSlot::Roof;
  if (name == "battlement") return MaterialSlot::Battlement;
  if (name == "door") return MaterialSlot::Door;
  throw FormatError(FormatError::Kind::Malformed, "unknown material slot: " + name);
}

}  // namespace

const char* SocketName(Socket s) { return kSocketNames[static_cast<int>(s)]; }

bool ParseSocket(const std::string& name, Socket* out)
{
  for (int i = 0; i < 3; ++i) {
    if (name == kSocketNames[i]) {
      *out = static_cast<Socket>(i);
      return true;
    }
  }
  return false;
}

CellModel RotateModel(const CellModel& m, int quarterTurns)
{
  quarterTurns = ((quarterTurns % 4) + 4) % 4;
  CellModel out = m;
  for (int t = 0; t < quarterTurns; ++t) {
    CellModel next = out;
    // Clockwise quarter turn: (x, z) -> (S-1-z, x); faces shift N<-W<-S<-E.
    for (int y = 0; y < out.height; ++y)
      for (int z = 0; z < out.size; ++z)
        for (int x = 0; x < out.size; ++x)
          next.voxels[y][x][out.size - 1 - z] = out.voxels[y][z][x];
    next.sockets[0] = out.sockets[3];
    next.sockets[1] = out.sockets[0];
    next.sockets[2] = out.sockets[1];
    next.sockets[3] = out.sockets[2];
    out = std::move(next);
  }
  return out;
}

const CellModel* ModelLibrary::matchBody(const std::array<Socket, 4>& faces,
                                         int* quarterTurns) const
{
  for (const CellModel& m : models) {
    if (m.role != ModelRole::Body) continue;
    for (int rot = 0; rot < 4; ++rot) {
      bool match = true;
      for (int f = 0; f < 4 && match; ++f) {
        // Rotating a model clockwise by one turn moves its west face to
        // north, so rotated socket at face f is the base socket at (f - rot).
        const int src = ((f - rot) % 4 + 4) % 4;
        if (m.sockets[src] != faces[f]) match = false;
      }
      if (match) {
        if (quarterTurns) *quarterTurns = rot;
        return &m;
      }
    }
  }
  return nullptr;
}

const CellModel* ModelLibrary::byRole(ModelRole role) const
{
  for (const CellModel& m : models)
    if (m.role == role) return &m;
  return nullptr;
}

const CellModel* ModelLibrary::byId(const std::string& id) const
{
  for (const CellModel& m : models)
    if (m.id == id) return &m;
  return nullptr;
}

CellModel ParseCellModel(const std::string& text)
{
  CellModel m;
  std::map<char, MaterialSlot> palette;
  palette['.'] = MaterialSlot::None;

  std::istringstream in(text);
  std::string raw;
  int pendingLayer = -1;
  int rowsRead = 0;
  while (std::getline(in, raw)) {
    std::string line = Trim(raw);
    if (pendingLayer >= 0 && rowsRead < m.size) {
      if (static_cast<int>(line.size()) != m.size)
        throw FormatError(FormatError::Kind::Malformed,
                          "layer row has wrong width in model " + m.id);
      for (int x = 0; x < m.size; ++x) {
        const auto it = palette.find(line[x]);
        if (it == palette.end())
          throw FormatError(FormatError::Kind::Malformed,
                            std::string("unknown palette char '") + line[x] + "' in " + m.id);
        m.voxels[pendingLayer][rowsRead][x] = it->second;
      }
      if (++rowsRead == m.size) pendingLayer = -1;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;

    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "model") {
      ls >> m.id;
    } else if (key == "size") {
      ls >> m.size >> m.height;
      if (m.size < 1 || m.height < 1)
        throw FormatError(FormatError::Kind::Malformed, "bad model size");
      m.voxels.assign(m.height, std::vector<std::vector<MaterialSlot>>(
                                    m.size, std::vector<MaterialSlot>(m.size, MaterialSlot::None)));
    } else if (key == "role") {
      std::string role;
      ls >> role;
      if (role == "body") m.role = ModelRole::Body;
      else if (role == "roof") m.role = ModelRole::Roof;
      else if (role == "tower_top") m.role = ModelRole::TowerTop;
      else throw FormatError(FormatError::Kind::Malformed, "unknown model role: " + role);
    } else if (key == "sockets") {
      for (int f = 0; f < 4; ++f) {
        std::string s;
        ls >> s;
        if (!ParseSocket(s, &m.sockets[f]))
          throw FormatError(FormatError::Kind::Malformed, "unknown socket: " + s);
      }
    } else if (key == "palette") {
      std::string ch, slot;
      ls >> ch >> slot;
      if (ch.size() != 1)
        throw FormatError(FormatError::Kind::Malformed, "palette char must be one character");
      palette[ch[0]] = SlotFromName(slot);
    } else if (key == "layer") {
      int y = -1;
      ls >> y;
      if (m.voxels.empty() || y < 0 || y >= m.height)
        throw FormatError(FormatError::Kind::Malformed, "layer index out of range");
      pendingLayer = y;
      rowsRead = 0;
    } else {
      throw FormatError(FormatError::Kind::Malformed, "unknown model directive: " + key);
    }
  }
  if (pendingLayer >= 0)
    throw FormatError(FormatError::Kind::Truncated, "model layer truncated in " + m.id);
  if (m.id.empty() || m.voxels.empty())
    throw FormatError(FormatError::Kind::Malformed, "model missing id or size");
  return m;
}

ModelLibrary LoadModelLibrary(const std::string& dir)
{
  ModelLibrary lib;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open model file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    lib.models.push_back(ParseCellModel(text));
  }
  if (lib.models.empty()) throw IoError("no model files under " + dir);
  return lib;
}

ModelLibrary DefaultModelLibrary(const std::string& dataDir)
{
  return LoadModelLibrary(dataDir + "/models");
}

}  // namespace citygen
