#include "citygen/Image.hpp"

#include "citygen/Error.hpp"

#include <cstdio>
#include <fstream>

namespace citygen {

namespace {

void WriteBinary(const std::string& path, const std::string& bytes)
{
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace

void WritePgm(const std::string& path, int width, int height,
              const std::vector<std::uint8_t>& gray)
{
  char header[64];
  std::snprintf(header, sizeof(header), "P5\n%d %d\n255\n", width, height);
  std::string bytes(header);
  bytes.append(reinterpret_cast<const char*>(gray.data()), gray.size());
  WriteBinary(path, bytes);
}

std::string RenderPpm(int width, int height, const std::vector<std::uint8_t>& rgb)
{
  char header[64];
  std::snprintf(header, sizeof(header), "P6\n%d %d\n255\n", width, height);
  std::string bytes(header);
  bytes.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
  return bytes;
}

void WritePpm(const std::string& path, int width, int height,
              const std::vector<std::uint8_t>& rgb)
{
  WriteBinary(path, RenderPpm(width, height, rgb));
}

}  // namespace citygen
