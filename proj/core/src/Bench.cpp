#include "citygen/Bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace citygen {

BenchReport RunMatrix(const std::vector<int>& areas, const std::vector<int>& steps,
                      const std::vector<Biome>& biomes, int repeats, std::uint64_t seedBase,
                      const RunConfig& base)
{
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  BenchReport report;

  for (const Biome biome : biomes) {
    for (const int area : areas) {
      for (const int stepCount : steps) {
        for (int r = 0; r < repeats; ++r) {
          PhaseTiming timing;
          timing.area = area;
          timing.steps = stepCount;
          timing.biome = biome;
          timing.seed = seedBase + static_cast<std::uint64_t>(r);
          RunConfig cfg = base;
          cfg.areaWidth = cfg.areaDepth = area;
          cfg.nSteps = stepCount;
          cfg.biome = biome;
          cfg.worldFile.reset();
          cfg.seed = timing.seed;
          try {
            const PipelineResult result = RunPipeline(cfg);
            timing.analysisS = result.seconds.analysis;
            timing.blueprintS = result.seconds.blueprint;
            timing.treeRemovalS = result.seconds.treeRemoval;
            timing.placementS = result.seconds.placement;
          } catch (const std::exception&) {
            timing.failed = true;
          }
          report.runs.push_back(timing);
        }
      }
    }
  }

  // Aggregates per parameter tuple; failed runs are excluded, outliers
  // beyond 3 sigma flagged and reported both ways.
  for (const Biome biome : biomes) {
    for (const int area : areas) {
      for (const int stepCount : steps) {
        std::vector<PhaseTiming*> tuple;
        for (PhaseTiming& t : report.runs)
          if (!t.failed && t.area == area && t.steps == stepCount && t.biome == biome)
            tuple.push_back(&t);
        if (tuple.empty()) continue;

        Aggregate agg;
        agg.area = area;
        agg.steps = stepCount;
        agg.biome = biome;
        agg.runs = static_cast<int>(tuple.size());
        double sum = 0.0;
        for (const PhaseTiming* t : tuple) sum += t->totalS();
        agg.meanTotal = sum / tuple.size();
        double var = 0.0;
        for (const PhaseTiming* t : tuple) {
          const double dev = t->totalS() - agg.meanTotal;
          var += dev * dev;
        }
        agg.stddevTotal = tuple.size() > 1 ? std::sqrt(var / (tuple.size() - 1)) : 0.0;

        double exclSum = 0.0;
        int exclN = 0;
        for (PhaseTiming* t : tuple) {
          if (agg.stddevTotal > 0.0 &&
              std::fabs(t->totalS() - agg.meanTotal) > 3.0 * agg.stddevTotal)
            t->outlier = true;
          if (!t->outlier) {
            exclSum += t->totalS();
            ++exclN;
          }
          agg.meanAnalysis += t->analysisS;
          agg.meanBlueprint += t->blueprintS;
          agg.meanTreeRemoval += t->treeRemovalS;
          agg.meanPlacement += t->placementS;
        }
        agg.meanTotalExclOutliers = exclN > 0 ? exclSum / exclN : agg.meanTotal;
        agg.meanAnalysis /= tuple.size();
        agg.meanBlueprint /= tuple.size();
        agg.meanTreeRemoval /= tuple.size();
        agg.meanPlacement /= tuple.size();
        report.aggregates.push_back(agg);
      }
    }
  }
  return report;
}

std::string ReportCsv(const BenchReport& report)
{
  std::string out = "area,steps,biome,seed,analysis,blueprint,tree_removal,placement,total,outlier_flag\n";
  char line[256];
  for (const PhaseTiming& t : report.runs) {
    if (t.failed) {
      std::snprintf(line, sizeof(line), "%d,%d,%s,%llu,failed,failed,failed,failed,failed,0\n",
                    t.area, t.steps, BiomeName(t.biome),
                    static_cast<unsigned long long>(t.seed));
    } else {
      std::snprintf(line, sizeof(line), "%d,%d,%s,%llu,%.6f,%.6f,%.6f,%.6f,%.6f,%d\n", t.area,
                    t.steps, BiomeName(t.biome), static_cast<unsigned long long>(t.seed),
                    t.analysisS, t.blueprintS, t.treeRemovalS, t.placementS, t.totalS(),
                    t.outlier ? 1 : 0);
    }
    out += line;
  }
  return out;
}

void ReportToCsv(const BenchReport& report, const std::string& path)
{
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  const std::string csv = ReportCsv(report);
  f.write(csv.data(), static_cast<std::streamsize>(csv.size()));
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace citygen
