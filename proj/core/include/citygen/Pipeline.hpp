#pragma once

#include "citygen/Agents.hpp"
#include "citygen/Analysis.hpp"
#include "citygen/Blueprint.hpp"
#include "citygen/Config.hpp"
#include "citygen/Economy.hpp"
#include "citygen/Narrative.hpp"
#include "citygen/Placement.hpp"
#include "citygen/World.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace citygen {

// Fully resolved run parameters. Exactly one of biome/worldFile drives the
// input world.
struct RunConfig {
  std::uint64_t seed = 1;
  int areaWidth = 128;
  int areaDepth = 128;
  int worldHeight = 64;
  double roughness = 0.2;
  std::optional<Biome> biome = Biome::Plains;
  std::optional<std::string> worldFile;
  int nSteps = 60;
  std::optional<std::string> rosterPath;
  std::string outDir = "out";
  int snapshotEvery = 10;
  std::string corpusPath;  // empty = <dataDir>/names_nl.txt
  std::string modelsDir;   // empty = <dataDir>/models
  std::string dataDir = ".";

  Economy economy;
  AffinityMatrix affinity;
  PlacementConfig placement;
  NarrativeConfig narrative;
  RosterDefaults roster;
  int seedRoadLength = 9;
  int flattestWindow = 9;

  static RunConfig fromConfig(const KeyValueConfig& kv);
  KeyValueConfig toConfig() const;  // every effective key, for the manifest

  void validate() const;  // throws ConfigError
};

struct PhaseSeconds {
  double analysis = 0.0;
  double blueprint = 0.0;  // planning plus differentiation
  double treeRemoval = 0.0;
  double placement = 0.0;
  double total() const { return analysis + blueprint + treeRemoval + placement; }
};

struct PipelineResult {
  VoxelWorld world;
  BuildArea area;
  TerrainMaps terrain;
  QualitativeFeatures features;
  Blueprint blueprint;
  DifferentiationResult differentiation;
  PlacementReport placementReport;
  Population population;
  Chronicle chronicle;
  std::optional<std::string> captainsLog;
  PhaseSeconds seconds;
};

// Optional observer invoked after every planning step (used for snapshot
// intervals and the coherence audits).
using StepObserver = std::function<void(const Blueprint&, int step)>;

// Runs analyse -> plan -> differentiate -> place -> narrate on one world.
// Narrative generation is excluded from the timed phases.
PipelineResult RunPipeline(const RunConfig& cfg, const StepObserver& observer = StepObserver());

}  // namespace citygen
