#pragma once

#include "citygen/Pipeline.hpp"
#include "citygen/World.hpp"

#include <string>
#include <vector>

namespace citygen {

struct PhaseTiming {
  int area = 0;   // square build area edge
  int steps = 0;
  Biome biome = Biome::Plains;
  std::uint64_t seed = 0;
  double analysisS = 0.0;
  double blueprintS = 0.0;  // includes building differentiation
  double treeRemovalS = 0.0;
  double placementS = 0.0;
  bool failed = false;
  bool outlier = false;

  double totalS() const { return analysisS + blueprintS + treeRemovalS + placementS; }
};

struct Aggregate {
  int area = 0;
  int steps = 0;
  Biome biome = Biome::Plains;
  int runs = 0;
  double meanTotal = 0.0;
  double stddevTotal = 0.0;
  double meanTotalExclOutliers = 0.0;
  double meanAnalysis = 0.0;
  double meanBlueprint = 0.0;
  double meanTreeRemoval = 0.0;
  double meanPlacement = 0.0;
};

struct BenchReport {
  std::vector<PhaseTiming> runs;
  std::vector<Aggregate> aggregates;
};

// Executes the full pipeline over the parameter grid with seeds
// seedBase..seedBase+repeats-1 per tuple, wall-clock timing each phase.
// Failed runs are recorded and excluded from aggregates; runs beyond
// 3 sigma of their tuple mean are flagged as outliers and aggregates are
// reported both with and without them.
BenchReport RunMatrix(const std::vector<int>& areas, const std::vector<int>& steps,
                      const std::vector<Biome>& biomes, int repeats, std::uint64_t seedBase,
                      const RunConfig& base = RunConfig{});

// area,steps,biome,seed,analysis,blueprint,tree_removal,placement,total,outlier_flag
std::string ReportCsv(const BenchReport& report);
void ReportToCsv(const BenchReport& report, const std::string& path);

}  // namespace citygen
