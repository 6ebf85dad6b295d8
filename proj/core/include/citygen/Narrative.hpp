#pragma once

#include "citygen/Blueprint.hpp"
#include "citygen/Rng.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace citygen {

// Per-letter probabilities of sampling each n-gram order (2,3,4,5). The mix
// trades novelty (low orders) against stability (high orders).
struct OrderProbs {
  double p[4] = {0.15, 0.25, 0.35, 0.25};
};

// Mixed-order letter Markov model. Per order n in {2..5}: transition tables
// from (n-1)-letter contexts to next-letter distributions, plus a terminal
// weight per context. Generation switches order probabilistically per letter
// and backs off to shorter contexts when the sampled one is unseen.
class NameModel {
public:
  struct Row {
    std::vector<std::pair<char, double>> letters;  // sorted by char, probabilities sum to 1
    double endWeight = 0.0;                        // P(end | context)
  };

  static constexpr int kMinOrder = 2;
  static constexpr int kMaxOrder = 5;

  // Throws ConfigError on an empty corpus or characters outside [a-z]
  // (position reported).
  static NameModel train(const std::vector<std::string>& corpus);

  const std::map<std::string, Row>& table(int order) const;
  const std::vector<std::string>& corpus() const { return corpus_; }

  // Capitalized name of length 3..14. Falls back to a corpus name after 20
  // failed attempts (flagged in *usedFallback when given).
  std::string generate(Rng& rng, const OrderProbs& probs = OrderProbs{},
                       bool* usedFallback = nullptr) const;

private:
  std::array<std::map<std::string, Row>, kMaxOrder - kMinOrder + 1> tables_;
  std::vector<std::string> corpus_;
};

std::vector<std::string> LoadCorpus(const std::string& path);

struct Inhabitant {
  std::string name;  // given + family name
  int age = 0;
  char sex = 'f';  // 'f' or 'm'
  std::string address;
  std::string maritalStatus;
  std::vector<Inhabitant> children;
};

struct Street {
  int segmentId = 0;
  std::string name;
};

struct Household {
  int plotId = 0;
  std::string street;
  int houseNumber = 0;
  std::vector<Inhabitant> residents;
};

struct Population {
  std::vector<Street> streets;
  std::vector<Household> households;
};

// Streets get generated names; each residential plot receives a small family
// with a shared surname and a house number that increases along its street.
Population GeneratePopulation(const Blueprint& bp, const NameModel& model, Rng& rng);

struct ChronicleEntry {
  int plotId = 0;
  PlotKind kind = PlotKind::Residential;
  std::string address;
  int buildYear = 0;
  int createdStep = 0;
  std::string text;
};

struct Chronicle {
  std::string cityName;
  Inhabitant mayor;
  std::vector<ChronicleEntry> entries;  // sorted by createdStep
  std::string renderedText;
};

struct NarrativeConfig {
  int foundingYear = 1432;
  int maxEntries = 0;  // 0 = no limit
};

// The mayor's chronicle: civilian buildings in build order with address,
// build year and their inhabitants or business line. Prose comes from
// templates with synonym slots; everything is seeded.
Chronicle WriteChronicle(const Blueprint& bp, const Population& population, const NameModel& model,
                         Rng& rng, const NarrativeConfig& cfg = NarrativeConfig{});

// Merchant ship log with dated entries; only produced when the city has a
// large boat.
std::optional<std::string> WriteCaptainsLog(const Blueprint& bp, const NameModel& model, Rng& rng,
                                            const NarrativeConfig& cfg = NarrativeConfig{});

// chronicle.jsonl: one structured record per entry.
std::string ChronicleJsonl(const Chronicle& chronicle);

}  // namespace citygen
