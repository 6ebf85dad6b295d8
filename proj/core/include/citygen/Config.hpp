#pragma once

#include "citygen/Error.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace citygen {

// Flat key-value configuration. File format: `key = value` lines, '#'
// comments, keys use dotted paths. Precedence: CLI flags > file > defaults.
class KeyValueConfig {
public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string getString(const std::string& key, const std::string& fallback) const;
  int getInt(const std::string& key, int fallback) const;
  std::uint64_t getU64(const std::string& key, std::uint64_t fallback) const;
  double getDouble(const std::string& key, double fallback) const;
  bool getBool(const std::string& key, bool fallback) const;

  // Overlays other on top of this (other wins).
  void merge(const KeyValueConfig& other);

  // Deterministic serialization (sorted keys); identical configs produce
  // identical bytes, which is what the manifest hash relies on.
  std::string serialize() const;
  std::uint64_t hash() const;

  const std::map<std::string, std::string>& values() const { return values_; }

private:
  std::map<std::string, std::string> values_;
};

}  // namespace citygen
