#pragma once

#include "citygen/Blueprint.hpp"

#include <optional>
#include <string>
#include <vector>

namespace citygen {

enum class AgentBehavior : std::uint8_t {
  GenericPlot = 0,
  RoadSplit,
  RoadConnect,
  RoadBridge,
  Wall,
  Church,
};

const char* AgentBehaviorName(AgentBehavior b);
bool ParseAgentBehavior(const std::string& name, AgentBehavior* out);

// Distance-to-own-kind: a hard cutoff (min/max) or a signed fitness weight.
struct OwnKindDistance {
  enum class Mode : std::uint8_t { MinCutoff, MaxCutoff, Weight };
  Mode mode = Mode::Weight;
  double value = 0.0;
};

// Declarative agent configuration. One instance per roster entry; immutable
// during a run and fully serializable to the roster config file.
struct AgentSpec {
  std::string name;
  AgentBehavior behavior = AgentBehavior::GenericPlot;
  PlotKind kind = PlotKind::CivilianGeneric;
  std::string variant;

  int activationStep = 0;
  int activationInterval = 1;
  bool insideWallOnly = false;
  bool outsideWallOnly = false;
  std::optional<int> maxPlots;
  std::optional<int> maxRoadDistance;
  bool waterOnly = false;
  bool criticallyImportant = false;
  std::optional<OwnKindDistance> ownKindDistance;
  std::optional<double> maxSlope;
  double slopeWeight = 1.0;
  std::string customFitness;  // name of a built-in scoring hook, empty for none
  int footprintMinW = 1, footprintMaxW = 1;
  int footprintMinD = 1, footprintMaxD = 1;
  bool randomOrientation = false;
  int sampleSize = 16;

  // Invoked at step t iff t >= activationStep, (t - activationStep) divides
  // the interval, and live plots of (kind, variant) are under maxPlots.
  bool activeAt(int t) const
  {
    return t >= activationStep && (t - activationStep) % activationInterval == 0;
  }

  void validate() const;  // throws ConfigError on contradictions
};

// One attempted action for one agent. Dispatches on spec.behavior.
AgentOutcome ActAgent(const AgentSpec& spec, Blueprint& bp);

// Individual behaviours (exposed for targeted tests).
AgentOutcome GenericPlotAct(const AgentSpec& spec, Blueprint& bp);
AgentOutcome RoadSplitAct(const AgentSpec& spec, Blueprint& bp);
AgentOutcome RoadConnectAct(const AgentSpec& spec, Blueprint& bp, int nPairs = 4);
AgentOutcome BridgeAct(const AgentSpec& spec, Blueprint& bp);
AgentOutcome WallAgentAct(const AgentSpec& spec, Blueprint& bp);
AgentOutcome ChurchAgentAct(const AgentSpec& spec, Blueprint& bp);
AgentOutcome RoadExtendAct(RoadExtender& ext, Blueprint& bp);

// Location score for watchtowers: high ground plus distance from the other
// towers, both normalized, equal weights by default.
double WatchtowerFitness(const Blueprint& bp, const Candidate& c, double alpha = 1.0,
                         double beta = 1.0);

// Runs one simulation step: every active roster agent in roster order, then
// the per-road extenders in segment order. An agent that throws is recorded
// as Error and the step continues.
StepReport StepBlueprint(Blueprint& bp, const std::vector<AgentSpec>& roster);

// Applies StepBlueprint nSteps times. Stopping anywhere leaves a valid plan.
void RunBlueprint(Blueprint& bp, const std::vector<AgentSpec>& roster, int nSteps);

// Tunables shared by the default roster.
struct RosterDefaults {
  int wallStep = 20;
};

// The standard roster: 3 road agents, 1 wall agent, 3 civilian plot agents,
// 5 farm agents, 9 tree agents, 3 water plot agents, 11 decoration agents,
// 1 watchtower agent, 1 church agent. Per-road extenders register themselves
// dynamically as roads appear.
std::vector<AgentSpec> DefaultRoster(const RosterDefaults& defaults = RosterDefaults{});

// Roster config file: one [agent <name>] block per instance, every field a
// key = value line. Order in the file is roster order.
std::string SerializeRoster(const std::vector<AgentSpec>& roster);
std::vector<AgentSpec> ParseRoster(const std::string& text);
std::vector<AgentSpec> LoadRoster(const std::string& path);

}  // namespace citygen
