#include "citygen/Cli.hpp"

#include "citygen/Bench.hpp"
#include "citygen/Pipeline.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace citygen {

namespace {

void WriteTextFile(const std::string& path, const std::string& content)
{
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw IoError("write failed: " + path);
}

bool ParseArea(const std::string& s, int* w, int* d)
{
  return std::sscanf(s.c_str(), "%dx%d", w, d) == 2;
}

std::vector<std::string> SplitCsv(const std::string& s)
{
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Hash over every reproducibility-relevant key (the output path is not one).
std::uint64_t ConfigHash(const KeyValueConfig& kv)
{
  KeyValueConfig copy = kv;
  KeyValueConfig stripped;
  for (const auto& [k, v] : copy.values()) {
    if (k == "out" || k == "config_hash") continue;
    stripped.set(k, v);
  }
  return stripped.hash();
}

struct CliFlags {
  std::string configPath;
  std::uint64_t seed = 0;
  bool seedSet = false;
  std::string area;
  std::string biome;
  std::string worldFile;
  int steps = -1;
  std::string roster;
  std::string out;
  int snapshotEvery = -1;
  std::string dataDir;
};

KeyValueConfig EffectiveConfig(const CliFlags& flags)
{
  // Precedence: CLI flags > config file > defaults.
  KeyValueConfig kv = RunConfig{}.toConfig();
  if (!flags.configPath.empty()) kv.merge(KeyValueConfig::load(flags.configPath));
  if (flags.seedSet) kv.set("seed", std::to_string(flags.seed));
  if (!flags.area.empty()) {
    int w = 0, d = 0;
    if (!ParseArea(flags.area, &w, &d)) throw ConfigError("bad --area, expected WxD");
    kv.set("area.width", std::to_string(w));
    kv.set("area.depth", std::to_string(d));
  }
  if (!flags.biome.empty()) kv.set("biome", flags.biome);
  if (!flags.worldFile.empty()) kv.set("world.file", flags.worldFile);
  if (flags.steps >= 0) kv.set("steps", std::to_string(flags.steps));
  if (!flags.roster.empty()) kv.set("roster", flags.roster);
  if (!flags.out.empty()) kv.set("out", flags.out);
  else if (const char* root = std::getenv("CITYGEN_OUT_ROOT"))
    kv.set("out", std::string(root) + "/" + kv.getString("out", "out"));
  if (flags.snapshotEvery >= 0) kv.set("snapshot.every", std::to_string(flags.snapshotEvery));
  if (!flags.dataDir.empty()) kv.set("data.dir", flags.dataDir);
  // A world file wins over a biome only when explicitly requested.
  if (kv.has("world.file") && flags.worldFile.empty() && !flags.biome.empty())
    throw ConfigError("both world.file and --biome given");
  return kv;
}

int CmdGenerate(const CliFlags& flags)
{
  const KeyValueConfig kv = EffectiveConfig(flags);
  const RunConfig cfg = RunConfig::fromConfig(kv);
  std::filesystem::create_directories(cfg.outDir);

  StepObserver observer;
  if (cfg.snapshotEvery > 0) {
    observer = [&cfg](const Blueprint& bp, int step) {
      if (step % cfg.snapshotEvery == 0) {
        char name[64];
        std::snprintf(name, sizeof(name), "/snapshot_%04d.ppm", step);
        bp.writeSnapshot(cfg.outDir + name);
      }
    };
  }

  const PipelineResult result = RunPipeline(cfg, observer);

  ExportWorld(result.world, cfg.outDir + "/world.sfw");
  result.blueprint.writeSnapshot(cfg.outDir + "/snapshot_final.ppm");
  WriteTextFile(cfg.outDir + "/events.tsv", result.blueprint.eventLogText());
  WriteTextFile(cfg.outDir + "/economy.tsv", TraceText(result.differentiation));
  WriteTextFile(cfg.outDir + "/chronicle.txt", result.chronicle.renderedText);
  WriteTextFile(cfg.outDir + "/chronicle.jsonl", ChronicleJsonl(result.chronicle));
  if (result.captainsLog) WriteTextFile(cfg.outDir + "/captains_log.txt", *result.captainsLog);

  KeyValueConfig manifest = cfg.toConfig();
  char hashBuf[32];
  std::snprintf(hashBuf, sizeof(hashBuf), "%016llx",
                static_cast<unsigned long long>(ConfigHash(manifest)));
  manifest.set("config_hash", hashBuf);
  WriteTextFile(cfg.outDir + "/manifest.txt", manifest.serialize());

  std::cout << "generated " << cfg.outDir << " (world hash "
            << std::to_string(result.world.contentHash()) << ", " << result.blueprint.plots().size()
            << " plots, " << result.placementReport.totalBlocks << " blocks)\n";
  return kExitOk;
}

int CmdAnalyze(const CliFlags& flags)
{
  const KeyValueConfig kv = EffectiveConfig(flags);
  const RunConfig cfg = RunConfig::fromConfig(kv);
  std::filesystem::create_directories(cfg.outDir);

  VoxelWorld world;
  if (cfg.worldFile) world = ImportWorld(*cfg.worldFile);
  else
    world = SynthesizeTerrain(StreamSeed(cfg.seed, "terrain"), cfg.areaWidth, cfg.worldHeight,
                              cfg.areaDepth, *cfg.biome, cfg.roughness);
  const int areaW = std::min(cfg.areaWidth, world.xSize());
  const int areaD = std::min(cfg.areaDepth, world.zSize());
  const BuildArea area{(world.xSize() - areaW) / 2, (world.zSize() - areaD) / 2, areaW, areaD};

  TerrainMaps maps;
  QualitativeFeatures features;
  Analyze(world, area, &maps, &features);
  DumpMaps(maps, cfg.outDir);

  std::ostringstream rec;
  rec << "dominant_biome = " << BiomeName(features.dominantBiome) << "\n";
  rec << "wood_types =";
  for (const WoodType w : features.woodTypes) rec << " " << WoodTypeName(w);
  rec << "\n";
  WriteTextFile(cfg.outDir + "/features.txt", rec.str());
  std::cout << "analyzed " << areaW << "x" << areaD << " -> " << cfg.outDir << "\n";
  return kExitOk;
}

int CmdBench(const CliFlags& flags, const std::string& areasCsv, const std::string& stepsCsv,
             const std::string& biomesCsv, int repeats, std::uint64_t seedBase,
             const std::string& csvPath)
{
  std::vector<int> areas, steps;
  std::vector<Biome> biomes;
  for (const std::string& a : SplitCsv(areasCsv)) areas.push_back(std::stoi(a));
  for (const std::string& s : SplitCsv(stepsCsv)) steps.push_back(std::stoi(s));
  for (const std::string& b : SplitCsv(biomesCsv)) {
    Biome biome;
    if (!ParseBiome(b, &biome)) throw ConfigError("unknown biome: " + b);
    biomes.push_back(biome);
  }
  RunConfig base = RunConfig::fromConfig(EffectiveConfig(flags));
  base.snapshotEvery = 0;

  const BenchReport report = RunMatrix(areas, steps, biomes, repeats, seedBase, base);
  ReportToCsv(report, csvPath);

  for (const Aggregate& agg : report.aggregates) {
    std::printf("%s %dx%d steps=%d runs=%d mean_total=%.3fs (excl outliers %.3fs) sd=%.3fs\n",
                BiomeName(agg.biome), agg.area, agg.area, agg.steps, agg.runs, agg.meanTotal,
                agg.meanTotalExclOutliers, agg.stddevTotal);
  }
  std::cout << "wrote " << csvPath << "\n";
  return kExitOk;
}

int CmdSnapshot(const CliFlags& flags, int every)
{
  // Deterministic re-render: replays the planning phase from the manifest
  // and writes one image per interval.
  const KeyValueConfig kv = EffectiveConfig(flags);
  const RunConfig cfg = RunConfig::fromConfig(kv);
  std::filesystem::create_directories(cfg.outDir);

  VoxelWorld world;
  if (cfg.worldFile) world = ImportWorld(*cfg.worldFile);
  else
    world = SynthesizeTerrain(StreamSeed(cfg.seed, "terrain"), cfg.areaWidth, cfg.worldHeight,
                              cfg.areaDepth, *cfg.biome, cfg.roughness);
  const int areaW = std::min(cfg.areaWidth, world.xSize());
  const int areaD = std::min(cfg.areaDepth, world.zSize());
  const BuildArea area{(world.xSize() - areaW) / 2, (world.zSize() - areaD) / 2, areaW, areaD};

  TerrainMaps maps;
  QualitativeFeatures features;
  Analyze(world, area, &maps, &features);
  Blueprint bp = Blueprint::init(maps, cfg.seed, cfg.seedRoadLength, cfg.flattestWindow);
  const std::vector<AgentSpec> roster =
      cfg.rosterPath ? LoadRoster(*cfg.rosterPath) : DefaultRoster(cfg.roster);

  const int interval = every > 0 ? every : (cfg.snapshotEvery > 0 ? cfg.snapshotEvery : 10);
  char name[64];
  std::snprintf(name, sizeof(name), "/snapshot_%04d.ppm", 0);
  bp.writeSnapshot(cfg.outDir + name);
  for (int i = 0; i < cfg.nSteps; ++i) {
    StepBlueprint(bp, roster);
    if (bp.step() % interval == 0 || i + 1 == cfg.nSteps) {
      std::snprintf(name, sizeof(name), "/snapshot_%04d.ppm", bp.step());
      bp.writeSnapshot(cfg.outDir + name);
    }
  }
  WriteTextFile(cfg.outDir + "/events.tsv", bp.eventLogText());
  std::cout << "rendered snapshots to " << cfg.outDir << "\n";
  return kExitOk;
}

void AddCommonFlags(CLI::App* cmd, CliFlags* flags)
{
  cmd->add_option("--config", flags->configPath, "config or manifest file");
  cmd->add_option("--seed", flags->seed, "master run seed")->each([flags](const std::string&) {
    flags->seedSet = true;
  });
  cmd->add_option("--area", flags->area, "build area WxD");
  cmd->add_option("--biome", flags->biome, "plains|jungle|desert|taiga|forest");
  cmd->add_option("--world", flags->worldFile, "input world file (instead of --biome)");
  cmd->add_option("--steps", flags->steps, "blueprint planning steps");
  cmd->add_option("--roster", flags->roster, "agent roster config file");
  cmd->add_option("--out", flags->out, "output directory");
  cmd->add_option("--snapshot-every", flags->snapshotEvery, "snapshot interval in steps");
  cmd->add_option("--data-dir", flags->dataDir, "directory with names corpus and models");
}

}  // namespace

int RunCli(const std::vector<std::string>& args)
{
  CLI::App app{"seeded procedural settlement generator"};
  app.require_subcommand(1);

  CliFlags flags;
  CLI::App* generate = app.add_subcommand("generate", "run the full pipeline");
  AddCommonFlags(generate, &flags);

  CLI::App* analyze = app.add_subcommand("analyze", "terrain analysis only; dumps feature maps");
  AddCommonFlags(analyze, &flags);

  CLI::App* bench = app.add_subcommand("bench", "runtime matrix over areas/steps/biomes");
  AddCommonFlags(bench, &flags);
  std::string areasCsv = "128,256", stepsCsv = "30,60", biomesCsv = "plains", csvPath = "bench.csv";
  int repeats = 5;
  std::uint64_t seedBase = 1;
  bench->add_option("--areas", areasCsv, "comma-separated square area sizes");
  bench->add_option("--bench-steps", stepsCsv, "comma-separated step counts");
  bench->add_option("--biomes", biomesCsv, "comma-separated biomes");
  bench->add_option("--repeats", repeats, "runs per parameter tuple");
  bench->add_option("--seed-base", seedBase, "first seed of each tuple");
  bench->add_option("--csv", csvPath, "output CSV path");

  CLI::App* snapshot = app.add_subcommand("snapshot", "re-render planning snapshots");
  AddCommonFlags(snapshot, &flags);
  int every = 0;
  snapshot->add_option("--every", every, "snapshot interval in steps");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (generate->parsed()) return CmdGenerate(flags);
    if (analyze->parsed()) return CmdAnalyze(flags);
    if (bench->parsed())
      return CmdBench(flags, areasCsv, stepsCsv, biomesCsv, repeats, seedBase, csvPath);
    if (snapshot->parsed()) return CmdSnapshot(flags, every);
  } catch (const NoBuildableLand& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoBuildableLand;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitConfig;
}

}  // namespace citygen
