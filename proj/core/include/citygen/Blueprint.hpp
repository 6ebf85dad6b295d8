#pragma once

#include "citygen/Analysis.hpp"
#include "citygen/FeatureMap.hpp"
#include "citygen/Geometry.hpp"
#include "citygen/Rng.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace citygen {

enum class PlotKind : std::uint8_t {
  CivilianGeneric = 0,
  Residential,
  Commercial,
  Industrial,
  Church,
  Watchtower,
  Farm,
  Tree,
  Boat,
  FishingPlatform,
  Decoration,
};

const char* PlotKindName(PlotKind k);
bool ParsePlotKind(const std::string& name, PlotKind* out);

struct Plot {
  int id = 0;
  PlotKind kind = PlotKind::CivilianGeneric;
  std::string variant;  // crop for farms, size for boats, item for decorations
  Rect rect;
  int anchorHeight = 0;
  int createdStep = 0;
  std::optional<Point> roadAccess;  // nearest road cell, when road-bound
};

struct RoadSegment {
  int id = 0;
  std::vector<Point> cells;  // 4-connected polyline, junction cell included
  bool bridge = false;
};

struct RoadGraph {
  std::vector<RoadSegment> segments;
  int nextId = 0;
};

struct WallBand {
  std::vector<Point> path;      // closed 4-connected loop, path[0] follows path.back()
  std::vector<int> cellWidth;   // per path cell, after plot clipping
  std::optional<int> placedStep;
};

struct Event {
  int step = 0;
  std::string agent;
  std::string action;  // place:<kind> | remove | road:<kind> | wall
  int entityId = -1;   // plot id, road segment id, -1 for the wall
  Rect rect;
};

enum class Outcome : std::uint8_t { Success, Skip, Error };

struct AgentOutcome {
  std::string agent;
  Outcome outcome = Outcome::Skip;
  std::string detail;
};

struct StepReport {
  int step = 0;
  std::vector<AgentOutcome> outcomes;
};

// Candidate-scan constraints shared by all plot agents.
struct ConstraintSet {
  int w = 1;
  int d = 1;
  std::optional<double> maxSlope;
  bool waterOnly = false;
  bool insideWallOnly = false;
  bool outsideWallOnly = false;
  std::optional<int> maxRoadDistance;
  bool ignorePlotCollision = false;  // critical agents scouting a bulldoze site
};

struct Candidate {
  Rect rect;
};

// Deferred agent registration: a road added mid-step spawns its own extender.
struct RoadExtender {
  int segmentId = 0;
  int activationStep = 0;
  int activationInterval = 2;
  bool dead = false;
};

// The evolving in-memory city plan. A plain value: copies are cheap enough at
// desk scale and give the anytime property for free.
class Blueprint {
public:
  Blueprint() = default;

  // Step 0 blueprint: one seed road piece centred on the flattest spot,
  // oriented along the flatter axis.
  static Blueprint init(const TerrainMaps& terrain, std::uint64_t seed, int seedRoadLength = 9,
                        int window = 9);

  const TerrainMaps& terrain() const { return terrain_; }
  int width() const { return terrain_.height.width(); }
  int depth() const { return terrain_.height.depth(); }
  int step() const { return step_; }
  Rng& rng() { return rng_; }

  const BoolMap& roadMap() const { return roadMap_; }
  const BoolMap& plotMap() const { return plotMap_; }
  const BoolMap& wallMap() const { return wallMap_; }
  const BoolMap& walledInMap() const { return walledInMap_; }

  const std::vector<Plot>& plots() const { return plots_; }
  const RoadGraph& roads() const { return roads_; }
  const WallBand& wall() const { return wall_; }
  const std::vector<Event>& eventLog() const { return events_; }

  std::vector<RoadExtender>& extenders() { return extenders_; }
  const std::vector<RoadExtender>& extenders() const { return extenders_; }

  // Live plot count for (kind, variant); empty variant matches any.
  int countPlots(PlotKind kind, const std::string& variant = std::string()) const;
  const Plot* findPlot(int id) const;

  // Mutations. All of them rasterize into the feature maps within the same
  // call and append to the event log.
  int addPlot(PlotKind kind, const std::string& variant, Rect rect, const std::string& agent);
  int addRoadSegment(std::vector<Point> cells, bool bridge, const std::string& kindTag,
                     const std::string& agent);
  // Appends newCells (which start at one of the segment's endpoints) to an
  // existing segment.
  void extendRoadSegment(int segmentId, const std::vector<Point>& newCells, bool atFront,
                         const std::string& agent);
  void placeWall(WallBand band, const std::string& agent);

  // Removes all plots intersecting rect; roads and the wall are never
  // touched. Throws PermissionError unless the caller is critically
  // important. Returns removed plot ids.
  std::vector<int> bulldoze(Rect rect, const std::string& agent, bool agentIsCritical);

  // Differentiation: only civilian_generic may change kind, and only into
  // one of the three civilian types.
  void setPlotKind(int id, PlotKind kind, const std::string& agent);

  // All placements of the requested footprint satisfying the constraints,
  // scan order x-major. Collision keeps one clear cell around roads (their
  // realized width) but is exact for plots and the wall band. Sites keep a
  // 4-cell margin off the build-area border so the wall always has room.
  std::vector<Candidate> findCandidates(const ConstraintSet& c) const;

  // Draws min(sampleSize, |candidates|) without replacement from the
  // blueprint rng, returns the fitness argmax; ties go to the first drawn.
  std::optional<Candidate> selectPlacement(const std::vector<Candidate>& candidates,
                                           const std::function<double(const Candidate&)>& fitness,
                                           int sampleSize);

  // BFS distance (4-neighbour, in cells) to the nearest road cell.
  const IntMap& roadDistanceField() const;

  // Step bookkeeping used by the step loop in Agents.cpp.
  void beginStep() {}
  void finishStep(StepReport report);
  const std::vector<StepReport>& stepReports() const { return reports_; }

  int anchorHeightFor(Rect rect) const;
  std::optional<Point> nearestRoadCell(Rect rect) const;

  // Recomputes every raster map from the structured data and compares; any
  // mismatch or plot overlap is reported. Empty result means coherent.
  std::vector<std::string> verifyCoherence() const;

  // Line-delimited event log: step\tagent\taction\tid\tx,z,w,d
  std::string eventLogText() const;

  void writeSnapshot(const std::string& path) const;

private:
  void rasterizePlot(const Rect& r, std::uint8_t v);
  void recomputePlotMap();

  TerrainMaps terrain_;
  BoolMap roadMap_, plotMap_, wallMap_, walledInMap_;
  std::vector<Plot> plots_;
  RoadGraph roads_;
  WallBand wall_;
  int step_ = 0;
  int nextPlotId_ = 0;
  Rng rng_;
  std::vector<Event> events_;
  std::vector<StepReport> reports_;
  std::vector<RoadExtender> extenders_;

  mutable IntMap roadDist_;
  mutable bool roadDistDirty_ = true;
};

// Renders the blueprint as a PPM (P6): terrain grayscale by height, water
// blue, roads dark gray, wall black, plots coloured by kind (fixed legend).
void WriteSnapshot(const Blueprint& bp, const std::string& path);

}  // namespace citygen
