#include "citygen/Pipeline.hpp"

#include <chrono>
#include <cmath>

namespace citygen {

namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

RunConfig RunConfig::fromConfig(const KeyValueConfig& kv)
{
  RunConfig cfg;
  cfg.seed = kv.getU64("seed", cfg.seed);
  cfg.areaWidth = kv.getInt("area.width", cfg.areaWidth);
  cfg.areaDepth = kv.getInt("area.depth", cfg.areaDepth);
  cfg.worldHeight = kv.getInt("world.height", cfg.worldHeight);
  cfg.roughness = kv.getDouble("terrain.roughness", cfg.roughness);
  if (kv.has("world.file")) {
    cfg.worldFile = kv.getString("world.file", "");
    cfg.biome.reset();
  } else {
    Biome b = Biome::Plains;
    const std::string name = kv.getString("biome", "plains");
    if (!ParseBiome(name, &b)) throw ConfigError("unknown biome: " + name);
    cfg.biome = b;
  }
  cfg.nSteps = kv.getInt("steps", cfg.nSteps);
  if (kv.has("roster")) cfg.rosterPath = kv.getString("roster", "");
  cfg.outDir = kv.getString("out", cfg.outDir);
  cfg.snapshotEvery = kv.getInt("snapshot.every", cfg.snapshotEvery);
  cfg.corpusPath = kv.getString("narrative.corpus", cfg.corpusPath);
  cfg.modelsDir = kv.getString("placement.models", cfg.modelsDir);
  cfg.dataDir = kv.getString("data.dir", cfg.dataDir);

  cfg.economy.unemploymentThreshold =
      kv.getDouble("economy.unemployment_threshold", cfg.economy.unemploymentThreshold);
  cfg.economy.workersPerHouse = kv.getInt("economy.workers_per_house", cfg.economy.workersPerHouse);
  cfg.economy.workersPerIndustry =
      kv.getInt("economy.workers_per_industry", cfg.economy.workersPerIndustry);
  cfg.economy.goodsPerIndustry =
      kv.getDouble("economy.goods_per_industry", cfg.economy.goodsPerIndustry);
  cfg.economy.incomePerIndustry =
      kv.getDouble("economy.income_per_industry", cfg.economy.incomePerIndustry);
  cfg.economy.workersPerCommerce =
      kv.getInt("economy.workers_per_commerce", cfg.economy.workersPerCommerce);
  cfg.economy.goodsCost = kv.getDouble("economy.goods_cost", cfg.economy.goodsCost);
  cfg.economy.moneyCost = kv.getDouble("economy.money_cost", cfg.economy.moneyCost);
  cfg.affinity.neighbourRadius = kv.getDouble("economy.radius", cfg.affinity.neighbourRadius);
  static const char* kTypes[3] = {"residential", "commercial", "industrial"};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      cfg.affinity.w[a][b] = kv.getDouble(
          std::string("economy.affinity.") + kTypes[a] + "." + kTypes[b], cfg.affinity.w[a][b]);

  cfg.placement.cellSize = kv.getInt("placement.cell_size", cfg.placement.cellSize);
  cfg.placement.unitHeight = kv.getInt("placement.unit_height", cfg.placement.unitHeight);
  cfg.placement.churchTowerLevels =
      kv.getInt("placement.church_tower_levels", cfg.placement.churchTowerLevels);
  cfg.placement.wallHeight = kv.getInt("wall.height", cfg.placement.wallHeight);
  cfg.placement.wallWidth = kv.getInt("wall.width", cfg.placement.wallWidth);
  cfg.placement.towerPeriod = kv.getInt("wall.tower_period", cfg.placement.towerPeriod);
  cfg.placement.sgWindow = kv.getInt("wall.sg_window", cfg.placement.sgWindow);
  cfg.placement.sgOrder = kv.getInt("wall.sg_order", cfg.placement.sgOrder);
  cfg.placement.farmRounds = kv.getInt("placement.farm_rounds", cfg.placement.farmRounds);
  cfg.placement.farmBlobsMin = kv.getInt("placement.farm_blobs_min", cfg.placement.farmBlobsMin);
  cfg.placement.farmBlobsMax = kv.getInt("placement.farm_blobs_max", cfg.placement.farmBlobsMax);

  cfg.narrative.foundingYear = kv.getInt("narrative.founding_year", cfg.narrative.foundingYear);
  cfg.narrative.maxEntries = kv.getInt("narrative.max_entries", cfg.narrative.maxEntries);
  cfg.roster.wallStep = kv.getInt("wall.step", cfg.roster.wallStep);
  cfg.seedRoadLength = kv.getInt("blueprint.seed_road_length", cfg.seedRoadLength);
  cfg.flattestWindow = kv.getInt("blueprint.window", cfg.flattestWindow);
  cfg.validate();
  return cfg;
}

KeyValueConfig RunConfig::toConfig() const
{
  KeyValueConfig kv;
  auto putInt = [&kv](const std::string& k, long long v) { kv.set(k, std::to_string(v)); };
  auto putDouble = [&kv](const std::string& k, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    kv.set(k, buf);
  };
  putInt("seed", static_cast<long long>(seed));
  putInt("area.width", areaWidth);
  putInt("area.depth", areaDepth);
  putInt("world.height", worldHeight);
  putDouble("terrain.roughness", roughness);
  if (worldFile) kv.set("world.file", *worldFile);
  else kv.set("biome", BiomeName(*biome));
  putInt("steps", nSteps);
  if (rosterPath) kv.set("roster", *rosterPath);
  kv.set("out", outDir);
  putInt("snapshot.every", snapshotEvery);
  if (!corpusPath.empty()) kv.set("narrative.corpus", corpusPath);
  if (!modelsDir.empty()) kv.set("placement.models", modelsDir);
  kv.set("data.dir", dataDir);

  putDouble("economy.unemployment_threshold", economy.unemploymentThreshold);
  putInt("economy.workers_per_house", economy.workersPerHouse);
  putInt("economy.workers_per_industry", economy.workersPerIndustry);
  putDouble("economy.goods_per_industry", economy.goodsPerIndustry);
  putDouble("economy.income_per_industry", economy.incomePerIndustry);
  putInt("economy.workers_per_commerce", economy.workersPerCommerce);
  putDouble("economy.goods_cost", economy.goodsCost);
  putDouble("economy.money_cost", economy.moneyCost);
  putDouble("economy.radius", affinity.neighbourRadius);
  static const char* kTypes[3] = {"residential", "commercial", "industrial"};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      putDouble(std::string("economy.affinity.") + kTypes[a] + "." + kTypes[b], affinity.w[a][b]);

  putInt("placement.cell_size", placement.cellSize);
  putInt("placement.unit_height", placement.unitHeight);
  putInt("placement.church_tower_levels", placement.churchTowerLevels);
  putInt("wall.height", placement.wallHeight);
  putInt("wall.width", placement.wallWidth);
  putInt("wall.tower_period", placement.towerPeriod);
  putInt("wall.sg_window", placement.sgWindow);
  putInt("wall.sg_order", placement.sgOrder);
  putInt("placement.farm_rounds", placement.farmRounds);
  putInt("placement.farm_blobs_min", placement.farmBlobsMin);
  putInt("placement.farm_blobs_max", placement.farmBlobsMax);
  putInt("narrative.founding_year", narrative.foundingYear);
  putInt("narrative.max_entries", narrative.maxEntries);
  putInt("wall.step", roster.wallStep);
  putInt("blueprint.seed_road_length", seedRoadLength);
  putInt("blueprint.window", flattestWindow);
  return kv;
}

void RunConfig::validate() const
{
  if (nSteps < 0) throw ConfigError("steps must be >= 0");
  if (static_cast<bool>(biome) == static_cast<bool>(worldFile))
    throw ConfigError("exactly one of biome / world file must be set");
  if (!worldFile && (areaWidth < 16 || areaDepth < 16))
    throw ConfigError("area must be at least 16x16");
  if (snapshotEvery < 0) throw ConfigError("snapshot.every must be >= 0");
}

PipelineResult RunPipeline(const RunConfig& cfg, const StepObserver& observer)
{
  cfg.validate();
  PipelineResult result;

  // Input world: synthesized or imported; untimed, the pipeline starts from
  // an existing world.
  if (cfg.worldFile) {
    result.world = ImportWorld(*cfg.worldFile);
  } else {
    result.world = SynthesizeTerrain(StreamSeed(cfg.seed, "terrain"), cfg.areaWidth,
                                     cfg.worldHeight, cfg.areaDepth, *cfg.biome, cfg.roughness);
  }
  const int areaW = std::min(cfg.areaWidth, result.world.xSize());
  const int areaD = std::min(cfg.areaDepth, result.world.zSize());
  result.area = BuildArea{(result.world.xSize() - areaW) / 2, (result.world.zSize() - areaD) / 2,
                          areaW, areaD};

  const auto t0 = Clock::now();
  Analyze(result.world, result.area, &result.terrain, &result.features);
  result.seconds.analysis = Since(t0);

  // Planning plus differentiation count as the blueprint phase.
  const auto t1 = Clock::now();
  result.blueprint =
      Blueprint::init(result.terrain, cfg.seed, cfg.seedRoadLength, cfg.flattestWindow);
  const std::vector<AgentSpec> roster =
      cfg.rosterPath ? LoadRoster(*cfg.rosterPath) : DefaultRoster(cfg.roster);
  for (int i = 0; i < cfg.nSteps; ++i) {
    StepBlueprint(result.blueprint, roster);
    if (observer) observer(result.blueprint, result.blueprint.step());
  }
  Economy econ = cfg.economy;
  result.differentiation = Differentiate(result.blueprint, econ, cfg.affinity);
  result.seconds.blueprint = Since(t1);

  const std::string modelsDir =
      cfg.modelsDir.empty() ? cfg.dataDir + "/models" : cfg.modelsDir;
  const ModelLibrary models = LoadModelLibrary(modelsDir);
  result.placementReport = PlaceAll(result.blueprint, result.world, result.area, result.features,
                                    cfg.seed, models, cfg.placement);
  result.seconds.treeRemoval = result.placementReport.treeRemovalSeconds;
  result.seconds.placement = result.placementReport.buildSeconds;

  // Narrative is not part of the timed phases.
  const std::string corpusPath =
      cfg.corpusPath.empty() ? cfg.dataDir + "/names_nl.txt" : cfg.corpusPath;
  const NameModel model = NameModel::train(LoadCorpus(corpusPath));
  Rng narrativeRng(StreamSeed(cfg.seed, "narrative"));
  result.population = GeneratePopulation(result.blueprint, model, narrativeRng);
  result.chronicle =
      WriteChronicle(result.blueprint, result.population, model, narrativeRng, cfg.narrative);
  result.captainsLog = WriteCaptainsLog(result.blueprint, model, narrativeRng, cfg.narrative);
  return result;
}

}  // namespace citygen
