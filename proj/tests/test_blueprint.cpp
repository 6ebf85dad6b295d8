#include "doctest.h"

#include "citygen/Agents.hpp"
#include "citygen/Blueprint.hpp"
#include "helpers.hpp"

#include <fstream>

using namespace citygen;
using namespace citygen::testutil;

TEST_CASE("init places exactly one seed road on the flattest spot")
{
  Blueprint bp = Blueprint::init(FlatTerrain(32, 32), 1);
  CHECK(bp.step() == 0);
  CHECK(bp.plots().empty());
  REQUIRE(bp.roads().segments.size() == 1);
  CHECK(bp.roads().segments[0].cells.size() == 9);
  CHECK(bp.verifyCoherence().empty());

  int roadCells = 0;
  for (int x = 0; x < 32; ++x)
    for (int z = 0; z < 32; ++z) roadCells += bp.roadMap().at(x, z);
  CHECK(roadCells == 9);
}

TEST_CASE("init on all-water terrain propagates the no-buildable-land error")
{
  TerrainMaps maps = FlatTerrain(32, 32);
  maps.water.fill(1);
  CHECK_THROWS_AS(Blueprint::init(maps, 1), NoBuildableLand);
}

TEST_CASE("seed road follows the flatter axis")
{
  // Corrugated along x (height varies with x): roads should run along z.
  TerrainMaps maps = FlatTerrain(32, 32);
  for (int x = 0; x < 32; ++x)
    for (int z = 0; z < 32; ++z) maps.height.at(x, z) = 20 + (x % 2);
  maps.slope = SlopeOf(maps.height);
  Blueprint bp = Blueprint::init(maps, 1);
  const auto& cells = bp.roads().segments[0].cells;
  CHECK(cells.front().x == cells.back().x);
  CHECK(cells.front().z != cells.back().z);
}

TEST_CASE("empty roster step still advances the clock")
{
  Blueprint bp = Blueprint::init(FlatTerrain(32, 32), 1);
  const StepReport report = StepBlueprint(bp, {});
  CHECK(report.outcomes.empty());
  CHECK(bp.step() == 1);
  CHECK(bp.plots().empty());
}

TEST_CASE("run(0) is the identity")
{
  Blueprint bp = Blueprint::init(FlatTerrain(32, 32), 1);
  const std::string before = bp.eventLogText();
  RunBlueprint(bp, DefaultRoster(), 0);
  CHECK(bp.step() == 0);
  CHECK(bp.eventLogText() == before);
}

TEST_CASE("find_candidates matches an exhaustive scan on an empty map")
{
  Blueprint bp = Blueprint::init(FlatTerrain(24, 20), 1);

  ConstraintSet c;
  c.w = 3;
  c.d = 3;
  const auto candidates = bp.findCandidates(c);

  // Exhaustive oracle: every placement inside the 4-cell border margin with
  // no collision against the road corridor (road cells dilated by one).
  int expected = 0;
  for (int x = 4; x + 3 <= 24 - 4; ++x) {
    for (int z = 4; z + 3 <= 20 - 4; ++z) {
      bool ok = true;
      for (int dx = 0; dx < 3 && ok; ++dx)
        for (int dz = 0; dz < 3 && ok; ++dz) {
          for (int nx = -1; nx <= 1 && ok; ++nx)
            for (int nz = -1; nz <= 1 && ok; ++nz) {
              const int px = x + dx + nx, pz = z + dz + nz;
              if (px < 0 || px >= 24 || pz < 0 || pz >= 20) continue;
              if (bp.roadMap().at(px, pz)) ok = false;
            }
        }
      if (ok) ++expected;
    }
  }
  CHECK(static_cast<int>(candidates.size()) == expected);
  CHECK(!candidates.empty());
}

TEST_CASE("water-only and wall constraints produce empty candidate sets")
{
  Blueprint bp = Blueprint::init(FlatTerrain(24, 24), 1);
  ConstraintSet c;
  c.w = 2;
  c.d = 2;
  SUBCASE("water-only on a land map")
  {
    c.waterOnly = true;
    CHECK(bp.findCandidates(c).empty());
  }
  SUBCASE("inside-wall before any wall exists")
  {
    c.insideWallOnly = true;
    CHECK(bp.findCandidates(c).empty());
  }
}

TEST_CASE("select_placement: single candidate, tie rule, global argmax")
{
  Blueprint bp = Blueprint::init(FlatTerrain(32, 32), 1);

  SUBCASE("one candidate wins regardless of fitness")
  {
    const std::vector<Candidate> one = {Candidate{Rect{1, 1, 2, 2}}};
    const auto picked = bp.selectPlacement(one, [](const Candidate&) { return -1e9; }, 4);
    REQUIRE(picked.has_value());
    CHECK(picked->rect == one[0].rect);
  }
  SUBCASE("constant fitness returns the first drawn")
  {
    std::vector<Candidate> candidates;
    for (int i = 0; i < 10; ++i) candidates.push_back(Candidate{Rect{i, 0, 1, 1}});
    const std::uint64_t state = bp.rng().state();
    Rng replay(0);
    replay.setState(state);
    const auto firstDraw = replay.sampleIndices(candidates.size(), 5)[0];
    const auto picked = bp.selectPlacement(candidates, [](const Candidate&) { return 0.0; }, 5);
    REQUIRE(picked.has_value());
    CHECK(picked->rect == candidates[firstDraw].rect);
  }
  SUBCASE("full sample finds the global flattest candidate")
  {
    TerrainMaps maps = FlatTerrain(16, 16);
    for (int x = 0; x < 16; ++x)
      for (int z = 0; z < 16; ++z) maps.height.at(x, z) = 20 + x;  // slope 1 everywhere
    maps.height.at(9, 9) = maps.height.at(8, 9);  // one flat pocket
    maps.slope = SlopeOf(maps.height);
    Blueprint bp2 = Blueprint::init(maps, 3);

    std::vector<Candidate> candidates;
    for (int x = 0; x < 15; ++x)
      for (int z = 0; z < 15; ++z) candidates.push_back(Candidate{Rect{x, z, 1, 1}});
    const auto fitness = [&](const Candidate& c) {
      return -maps.slope.at(c.rect.x, c.rect.z);
    };
    // Exhaustive argmax oracle (ties to scan order).
    double bestScore = -1e18;
    for (const Candidate& c : candidates) bestScore = std::max(bestScore, fitness(c));
    const auto picked =
        bp2.selectPlacement(candidates, fitness, static_cast<int>(candidates.size()));
    REQUIRE(picked.has_value());
    CHECK(fitness(*picked) == bestScore);
  }
}

TEST_CASE("bulldoze removes plots, spares roads, and checks permission")
{
  Blueprint bp = Blueprint::init(FlatTerrain(32, 32), 1);
  const int meadow = bp.addPlot(PlotKind::Tree, "", Rect{20, 20, 2, 2}, "tree_1");
  const int grove = bp.addPlot(PlotKind::Tree, "", Rect{24, 20, 2, 2}, "tree_2");
  bp.addPlot(PlotKind::Tree, "", Rect{20, 28, 2, 2}, "tree_3");

  SUBCASE("non-critical agent is refused")
  {
    CHECK_THROWS_AS(bp.bulldoze(Rect{18, 18, 10, 10}, "tree_1", false), PermissionError);
  }
  SUBCASE("critical agent removes intersecting plots only")
  {
    const auto removed = bp.bulldoze(Rect{19, 19, 8, 4}, "church", true);
    CHECK(removed == std::vector<int>{meadow, grove});
    CHECK(bp.plots().size() == 1);
    CHECK(bp.plotMap().at(20, 20) == 0);
    CHECK(bp.plotMap().at(20, 28) == 1);
    // The road is untouched: rasterization still matches.
    CHECK(bp.verifyCoherence().empty());
    int roadCells = 0;
    for (int x = 0; x < 32; ++x)
      for (int z = 0; z < 32; ++z) roadCells += bp.roadMap().at(x, z);
    CHECK(roadCells == 9);
    // Removal events carry the bulldozing agent.
    int removals = 0;
    for (const Event& e : bp.eventLog())
      if (e.action == "remove") {
        ++removals;
        CHECK(e.agent == "church");
      }
    CHECK(removals == 2);
  }
}

TEST_CASE("plot kind rewrites are restricted to differentiation")
{
  Blueprint bp = Blueprint::init(FlatTerrain(32, 32), 1);
  const int id = bp.addPlot(PlotKind::CivilianGeneric, "", Rect{20, 20, 3, 3}, "civ");
  const int tree = bp.addPlot(PlotKind::Tree, "", Rect{26, 20, 2, 2}, "tree");
  CHECK_THROWS_AS(bp.setPlotKind(id, PlotKind::Church, "x"), PermissionError);
  CHECK_THROWS_AS(bp.setPlotKind(tree, PlotKind::Residential, "x"), PermissionError);
  bp.setPlotKind(id, PlotKind::Commercial, "differentiate");
  CHECK(bp.findPlot(id)->kind == PlotKind::Commercial);
}

TEST_CASE("same terrain and seed give identical event logs")
{
  const TerrainMaps terrain = FlatTerrain(64, 64);
  const auto roster = DefaultRoster();
  Blueprint a = Blueprint::init(terrain, 42);
  Blueprint b = Blueprint::init(terrain, 42);
  RunBlueprint(a, roster, 25);
  RunBlueprint(b, roster, 25);
  CHECK(a.eventLogText() == b.eventLogText());
  CHECK(!a.eventLog().empty());

  Blueprint c = Blueprint::init(terrain, 43);
  RunBlueprint(c, roster, 25);
  CHECK(a.eventLogText() != c.eventLogText());
}

TEST_CASE("raster maps stay coherent through a run")
{
  Blueprint bp = Blueprint::init(FlatTerrain(64, 64), 5);
  const auto roster = DefaultRoster();
  for (int i = 0; i < 30; ++i) {
    StepBlueprint(bp, roster);
    const auto problems = bp.verifyCoherence();
    for (const std::string& p : problems) FAIL_CHECK(p);
    REQUIRE(problems.empty());
  }
  CHECK(bp.plots().size() > 3);
}

TEST_CASE("snapshots are deterministic and show the seed road")
{
  Blueprint bp = Blueprint::init(FlatTerrain(24, 24), 1);
  const std::string pathA = TempPath("snap_a.ppm");
  const std::string pathB = TempPath("snap_b.ppm");
  bp.writeSnapshot(pathA);
  bp.writeSnapshot(pathB);

  auto read = [](const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  };
  const std::string bytesA = read(pathA);
  CHECK(bytesA == read(pathB));

  // Exactly the 9 seed road pixels are dark gray (70,70,70).
  const std::size_t headerEnd = bytesA.find("255\n") + 4;
  int roadPixels = 0;
  for (std::size_t i = headerEnd; i + 2 < bytesA.size(); i += 3) {
    if (static_cast<std::uint8_t>(bytesA[i]) == 70 &&
        static_cast<std::uint8_t>(bytesA[i + 1]) == 70 &&
        static_cast<std::uint8_t>(bytesA[i + 2]) == 70)
      ++roadPixels;
  }
  CHECK(roadPixels == 9);
}

TEST_CASE("event log export format is line-delimited tab-separated")
{
  Blueprint bp = Blueprint::init(FlatTerrain(24, 24), 1);
  bp.addPlot(PlotKind::Farm, "wheat", Rect{2, 2, 4, 4}, "farm_wheat");
  const std::string log = bp.eventLogText();
  CHECK(log.find("0\tinit\troad:seed\t0\t") == 0);
  CHECK(log.find("0\tfarm_wheat\tplace:farm\t0\t2,2,4,4\n") != std::string::npos);
}
