#pragma once

#include <stdexcept>
#include <string>

namespace citygen {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coordinate or dimension outside the valid range. Never a silent clamp.
struct BoundsError : Error {
  using Error::Error;
};

// Malformed persistent data. Kind distinguishes the documented failure cases
// of the world file format.
struct FormatError : Error {
  enum class Kind { BadMagic, BadVersion, BadPalette, Truncated, Malformed };
  FormatError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
  Kind kind;
};

struct IoError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

// No window of the build area is buildable (all water / pre-existing blockers).
struct NoBuildableLand : Error {
  using Error::Error;
};

// An agent without the critically-important flag attempted to bulldoze.
struct PermissionError : Error {
  using Error::Error;
};

}  // namespace citygen
