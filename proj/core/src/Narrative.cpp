#include "citygen/Narrative.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace citygen {

namespace {

constexpr char kStart = '^';

bool ValidLetter(char c) { return c >= 'a' && c <= 'z'; }

std::string Capitalize(std::string s)
{
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

// Weighted pick over a row's letter distribution.
char SampleLetter(const NameModel::Row& row, Rng& rng)
{
  double roll = rng.nextDouble();
  for (const auto& [letter, p] : row.letters) {
    roll -= p;
    if (roll < 0.0) return letter;
  }
  return row.letters.back().first;
}

const char* kStreetSuffixes[] = {"straat", "weg", "laan", "pad", "steeg", "gracht"};
const char* kCitySuffixes[] = {"dam", "burg", "hoven", "wijk", "veld", "muiden"};

}  // namespace

NameModel NameModel::train(const std::vector<std::string>& corpus)
{
  if (corpus.empty()) throw ConfigError("name corpus is empty");
  for (const std::string& name : corpus) {
    for (std::size_t i = 0; i < name.size(); ++i) {
      if (!ValidLetter(name[i]))
        throw ConfigError("corpus name '" + name + "' has a character outside [a-z] at position " +
                          std::to_string(i));
    }
    if (name.empty()) throw ConfigError("corpus contains an empty name");
  }

  NameModel model;
  model.corpus_ = corpus;

  for (int order = kMinOrder; order <= kMaxOrder; ++order) {
    const int ctxLen = order - 1;
    std::map<std::string, std::map<char, int>> counts;
    std::map<std::string, int> ends;
    for (const std::string& name : corpus) {
      const std::string padded = std::string(ctxLen, kStart) + name;
      for (std::size_t i = ctxLen; i < padded.size(); ++i) {
        const std::string ctx = padded.substr(i - ctxLen, ctxLen);
        counts[ctx][padded[i]]++;
      }
      ends[padded.substr(padded.size() - ctxLen, ctxLen)]++;
    }
    auto& table = model.tables_[order - kMinOrder];
    for (const auto& [ctx, letterCounts] : counts) {
      Row row;
      int total = 0;
      for (const auto& [letter, n] : letterCounts) total += n;
      for (const auto& [letter, n] : letterCounts)
        row.letters.emplace_back(letter, static_cast<double>(n) / total);
      const int endN = ends.count(ctx) ? ends[ctx] : 0;
      row.endWeight = static_cast<double>(endN) / (endN + total);
      table[ctx] = std::move(row);
    }
    // Contexts that only ever end a name still need an entry so the
    // terminal weight is reachable.
    for (const auto& [ctx, endN] : ends) {
      if (table.count(ctx)) continue;
      Row row;
      row.endWeight = 1.0;
      table[ctx] = std::move(row);
    }
  }
  return model;
}

const std::map<std::string, NameModel::Row>& NameModel::table(int order) const
{
  if (order < kMinOrder || order > kMaxOrder) throw BoundsError("order out of range");
  return tables_[order - kMinOrder];
}

std::string NameModel::generate(Rng& rng, const OrderProbs& probs, bool* usedFallback) const
{
  if (usedFallback) *usedFallback = false;
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::string emitted;
    bool ok = true;
    while (static_cast<int>(emitted.size()) < 14) {
      // Sample the n-gram order for this letter.
      double roll = rng.nextDouble();
      int order = kMaxOrder;
      for (int i = 0; i < 4; ++i) {
        roll -= probs.p[i];
        if (roll < 0.0) {
          order = kMinOrder + i;
          break;
        }
      }

      // Back off to shorter contexts when the sampled one is unseen.
      const Row* row = nullptr;
      for (int o = order; o >= kMinOrder; --o) {
        const int ctxLen = o - 1;
        std::string ctx = std::string(ctxLen, kStart) + emitted;
        ctx = ctx.substr(ctx.size() - ctxLen);
        const auto& table = tables_[o - kMinOrder];
        const auto it = table.find(ctx);
        if (it != table.end()) {
          row = &it->second;
          break;
        }
      }
      if (!row) {
        ok = false;
        break;
      }
      if (row->letters.empty() ||
          (static_cast<int>(emitted.size()) >= 3 && rng.nextDouble() < row->endWeight)) {
        break;  // terminal
      }
      emitted.push_back(SampleLetter(*row, rng));
    }
    if (ok && static_cast<int>(emitted.size()) >= 3) return Capitalize(emitted);
  }
  if (usedFallback) *usedFallback = true;
  return Capitalize(corpus_[rng.nextBelow(corpus_.size())]);
}

std::vector<std::string> LoadCorpus(const std::string& path)
{
  std::ifstream f(path);
  if (!f) throw IoError("cannot open corpus: " + path);
  std::vector<std::string> names;
  std::string line;
  while (std::getline(f, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    names.push_back(line);
  }
  return names;
}

Population GeneratePopulation(const Blueprint& bp, const NameModel& model, Rng& rng)
{
  Population pop;

  // One street name per contiguous road segment, in segment order.
  for (const RoadSegment& seg : bp.roads().segments) {
    Street s;
    s.segmentId = seg.id;
    s.name = model.generate(rng) +
             kStreetSuffixes[rng.nextBelow(std::size(kStreetSuffixes))];
    pop.streets.push_back(std::move(s));
  }

  // Index road cells so an address maps to (street, distance along it).
  struct CellRef {
    int segmentId;
    int index;
  };
  std::map<std::pair<int, int>, CellRef> cellToStreet;
  for (const RoadSegment& seg : bp.roads().segments) {
    for (std::size_t i = 0; i < seg.cells.size(); ++i) {
      const auto key = std::make_pair(seg.cells[i].x, seg.cells[i].z);
      if (!cellToStreet.count(key))
        cellToStreet[key] = CellRef{seg.id, static_cast<int>(i)};
    }
  }

  struct Pending {
    int plotId;
    int segmentId;
    int cellIndex;
  };
  std::vector<Pending> pending;
  for (const Plot& p : bp.plots()) {
    if (p.kind != PlotKind::Residential || !p.roadAccess) continue;
    const auto key = std::make_pair(p.roadAccess->x, p.roadAccess->z);
    const auto it = cellToStreet.find(key);
    if (it == cellToStreet.end()) continue;
    pending.push_back(Pending{p.id, it->second.segmentId, it->second.index});
  }
  // House numbers increase with distance from the street start.
  std::stable_sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    if (a.segmentId != b.segmentId) return a.segmentId < b.segmentId;
    if (a.cellIndex != b.cellIndex) return a.cellIndex < b.cellIndex;
    return a.plotId < b.plotId;
  });

  std::map<int, int> nextNumber;
  std::map<int, std::string> streetName;
  for (const Street& s : pop.streets) streetName[s.segmentId] = s.name;

  for (const Pending& pend : pending) {
    Household hh;
    hh.plotId = pend.plotId;
    hh.street = streetName[pend.segmentId];
    hh.houseNumber = ++nextNumber[pend.segmentId];
    const std::string address = hh.street + " " + std::to_string(hh.houseNumber);

    const std::string surname = model.generate(rng);
    const bool married = rng.chance(0.6);
    const int adults = married ? 2 : 1;
    const int childCount = rng.rangeInt(0, std::min(3, 5 - adults));

    int youngestParent = 0;
    for (int a = 0; a < adults; ++a) {
      Inhabitant person;
      person.name = model.generate(rng) + " " + surname;
      person.age = rng.rangeInt(20, 70);
      person.sex = (a == 0) == rng.chance(0.5) ? 'f' : 'm';
      person.address = address;
      person.maritalStatus = married ? "married" : (rng.chance(0.2) ? "widowed" : "single");
      youngestParent = a == 0 ? person.age : std::min(youngestParent, person.age);
      hh.residents.push_back(std::move(person));
    }
    for (int c = 0; c < childCount; ++c) {
      if (youngestParent - 17 < 0) break;
      Inhabitant child;
      child.name = model.generate(rng) + " " + surname;
      child.age = rng.rangeInt(0, youngestParent - 17);
      child.sex = rng.chance(0.5) ? 'f' : 'm';
      child.address = address;
      child.maritalStatus = "single";
      hh.residents.front().children.push_back(child);
      hh.residents.push_back(std::move(child));
    }
    pop.households.push_back(std::move(hh));
  }
  return pop;
}

namespace {

std::string PickSynonym(Rng& rng, const std::vector<std::string>& options)
{
  return options[rng.nextBelow(options.size())];
}

}  // namespace

Chronicle WriteChronicle(const Blueprint& bp, const Population& population,
                         const NameModel& model, Rng& rng, const NarrativeConfig& cfg)
{
  Chronicle chronicle;
  chronicle.cityName =
      model.generate(rng) + kCitySuffixes[rng.nextBelow(std::size(kCitySuffixes))];

  chronicle.mayor.name = model.generate(rng) + " " + model.generate(rng);
  chronicle.mayor.age = rng.rangeInt(40, 70);
  chronicle.mayor.sex = rng.chance(0.5) ? 'f' : 'm';
  chronicle.mayor.maritalStatus = "married";
  chronicle.mayor.address = chronicle.cityName + " town hall";

  std::map<int, const Household*> byPlot;
  for (const Household& hh : population.households) byPlot[hh.plotId] = &hh;

  std::vector<const Plot*> civil;
  for (const Plot& p : bp.plots()) {
    if (p.kind == PlotKind::Residential || p.kind == PlotKind::Commercial ||
        p.kind == PlotKind::Industrial)
      civil.push_back(&p);
  }
  std::stable_sort(civil.begin(), civil.end(), [](const Plot* a, const Plot* b) {
    if (a->createdStep != b->createdStep) return a->createdStep < b->createdStep;
    return a->id < b->id;
  });

  static const std::vector<std::string> kTroubles = {
      "a rat infestation", "lacking supplies", "a leaking roof", "the long winter"};
  static const std::vector<std::string> kMoods = {"thriving", "doing fine", "struggling"};
  static const std::vector<std::string> kBuiltVerbs = {"raised", "built", "erected"};
  static const std::vector<std::string> kTrades = {"smithy", "bakery", "weaving shop",
                                                   "carpentry", "brewery"};
  static const std::vector<std::string> kWorks = {"workshop", "yard", "mill"};

  std::ostringstream text;
  text << "Chronicle of " << chronicle.cityName << "\n";
  text << "As set down by mayor " << chronicle.mayor.name << ".\n\n";

  int written = 0;
  for (const Plot* p : civil) {
    if (cfg.maxEntries > 0 && written >= cfg.maxEntries) break;
    ChronicleEntry entry;
    entry.plotId = p->id;
    entry.kind = p->kind;
    entry.createdStep = p->createdStep;
    entry.buildYear = cfg.foundingYear + p->createdStep;

    const Household* hh = byPlot.count(p->id) ? byPlot[p->id] : nullptr;
    entry.address = hh ? hh->street + " " + std::to_string(hh->houseNumber)
                       : "plot " + std::to_string(p->id);

    std::ostringstream line;
    line << "In the year " << entry.buildYear << ", ";
    if (p->kind == PlotKind::Residential) {
      line << "the house at " << entry.address << " was "
           << PickSynonym(rng, kBuiltVerbs) << ".";
      if (hh && !hh->residents.empty()) {
        line << " There live";
        if (hh->residents.size() == 1) line << "s";
        for (std::size_t i = 0; i < hh->residents.size(); ++i) {
          const Inhabitant& person = hh->residents[i];
          if (i > 0) line << (i + 1 == hh->residents.size() ? " and" : ",");
          line << " " << person.name << " (" << person.age << ")";
        }
        line << ".";
      }
    } else if (p->kind == PlotKind::Commercial) {
      const std::string owner = model.generate(rng) + " " + model.generate(rng);
      const bool struggling = rng.chance(0.4);
      line << "a " << PickSynonym(rng, kTrades) << " opened at " << entry.address
           << ", run by " << owner << ".";
      if (struggling) {
        line << " The business is not doing so well due to " << PickSynonym(rng, kTroubles)
             << ".";
      } else {
        line << " The business is " << PickSynonym(rng, kMoods) << ".";
      }
    } else {
      line << "a " << PickSynonym(rng, kWorks) << " was " << PickSynonym(rng, kBuiltVerbs)
           << " at " << entry.address << ", and its chimneys have smoked ever since.";
    }
    entry.text = line.str();
    text << entry.text << "\n";
    chronicle.entries.push_back(std::move(entry));
    ++written;
  }
  chronicle.renderedText = text.str();
  return chronicle;
}

std::optional<std::string> WriteCaptainsLog(const Blueprint& bp, const NameModel& model, Rng& rng,
                                            const NarrativeConfig& cfg)
{
  bool hasLargeBoat = false;
  for (const Plot& p : bp.plots())
    if (p.kind == PlotKind::Boat && p.variant == "large") hasLargeBoat = true;
  if (!hasLargeBoat) return std::nullopt;

  static const std::vector<std::string> kCargo = {"salted fish", "wool bales", "oak timber",
                                                  "barley", "clay pots", "iron ingots"};
  static const std::vector<std::string> kSeas = {"calm seas", "a stiff northern wind",
                                                 "fog banks", "heavy swells"};

  const std::string ship = model.generate(rng);
  const std::string captain = model.generate(rng) + " " + model.generate(rng);
  std::ostringstream log;
  log << "Log of the merchant ship " << ship << ", captain " << captain << ".\n\n";
  const int entries = 3 + static_cast<int>(rng.nextBelow(3));
  int day = 1 + static_cast<int>(rng.nextBelow(20));
  for (int i = 0; i < entries; ++i) {
    const std::string port = model.generate(rng) + kCitySuffixes[rng.nextBelow(6)];
    log << "Day " << day << ": ";
    if (i == 0) {
      log << "took on " << PickSynonym(rng, kCargo) << " and set sail for " << port << ".\n";
    } else if (i + 1 == entries) {
      log << "made home port with the hold near empty; the year " << cfg.foundingYear
          << " has been kind.\n";
    } else {
      log << "traded " << PickSynonym(rng, kCargo) << " at " << port << " through "
          << PickSynonym(rng, kSeas) << ".\n";
    }
    day += 2 + static_cast<int>(rng.nextBelow(9));
  }
  return log.str();
}

std::string ChronicleJsonl(const Chronicle& chronicle)
{
  std::string out;
  for (const ChronicleEntry& e : chronicle.entries) {
    nlohmann::json j;
    j["plot_id"] = e.plotId;
    j["kind"] = PlotKindName(e.kind);
    j["address"] = e.address;
    j["build_year"] = e.buildYear;
    j["created_step"] = e.createdStep;
    j["text"] = e.text;
    out += j.dump();
    out += "\n";
  }
  return out;
}

}  // namespace citygen
