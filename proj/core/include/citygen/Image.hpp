#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace citygen {

// Binary PGM (P5), 8-bit, row-major.
void WritePgm(const std::string& path, int width, int height,
              const std::vector<std::uint8_t>& gray);

// Binary PPM (P6), 8-bit RGB, row-major.
void WritePpm(const std::string& path, int width, int height,
              const std::vector<std::uint8_t>& rgb);

std::string RenderPpm(int width, int height, const std::vector<std::uint8_t>& rgb);

}  // namespace citygen
