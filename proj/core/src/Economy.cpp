#include "citygen/Economy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace citygen {

bool ResidentialCanConvert(const Economy& e) { return e.unemployment() < e.unemploymentThreshold; }

bool IndustrialCanConvert(const Economy& e) { return e.unemployed() >= e.workersPerIndustry; }

bool CommercialCanConvert(const Economy& e)
{
  return e.unemployed() >= e.workersPerCommerce && e.goods >= e.goodsCost &&
         e.income >= e.moneyCost;
}

namespace {

int TypeIndex(PlotKind k)
{
  switch (k) {
  case PlotKind::Residential: return 0;
  case PlotKind::Commercial: return 1;
  case PlotKind::Industrial: return 2;
  default: return -1;
  }
}

// Neighbour-affinity score: sum over typed plots within the radius of
// w[type][neighbour]/(1+distance).
double PlotFitness(const Blueprint& bp, const AffinityMatrix& affinity, PlotKind type,
                   const Plot& generic)
{
  const int t = TypeIndex(type);
  double score = 0.0;
  for (const Plot& p : bp.plots()) {
    const int n = TypeIndex(p.kind);
    if (n < 0 || p.id == generic.id) continue;
    const double dist = EuclideanDist(generic.rect.centerX(), generic.rect.centerZ(),
                                      p.rect.centerX(), p.rect.centerZ());
    if (dist > affinity.neighbourRadius) continue;
    score += affinity.w[t][n] / (1.0 + dist);
  }
  return score;
}

void ApplyConversion(Economy& e, PlotKind type)
{
  switch (type) {
  case PlotKind::Residential: e.workers += e.workersPerHouse; break;
  case PlotKind::Industrial:
    e.employed += e.workersPerIndustry;
    e.goods += e.goodsPerIndustry;
    e.income += e.incomePerIndustry;
    break;
  case PlotKind::Commercial:
    e.employed += e.workersPerCommerce;
    e.goods -= e.goodsCost;
    e.income -= e.moneyCost;
    break;
  default: break;
  }
}

}  // namespace

DifferentiationResult Differentiate(Blueprint& bp, Economy& econ, const AffinityMatrix& affinity)
{
  DifferentiationResult result;
  int step = 0;

  auto genericIds = [&bp]() {
    std::vector<int> ids;
    for (const Plot& p : bp.plots())
      if (p.kind == PlotKind::CivilianGeneric) ids.push_back(p.id);
    return ids;
  };

  auto convert = [&](int plotId, PlotKind type, bool fallback) {
    bp.setPlotKind(plotId, type, fallback ? "differentiate_fallback" : "differentiate");
    ApplyConversion(econ, type);
    result.trace.push_back(ConversionRecord{step, type, plotId, econ.workers, econ.employed,
                                            econ.goods, econ.income, fallback});
  };

  const PlotKind order[3] = {PlotKind::Residential, PlotKind::Industrial, PlotKind::Commercial};
  while (true) {
    bool converted = false;
    for (const PlotKind type : order) {
      const std::vector<int> ids = genericIds();
      if (ids.empty()) break;
      const bool allowed = (type == PlotKind::Residential && ResidentialCanConvert(econ)) ||
                           (type == PlotKind::Industrial && IndustrialCanConvert(econ)) ||
                           (type == PlotKind::Commercial && CommercialCanConvert(econ));
      if (!allowed) continue;
      int bestId = -1;
      double bestScore = 0.0;
      for (const int id : ids) {
        const Plot* p = bp.findPlot(id);
        const double s = PlotFitness(bp, affinity, type, *p);
        if (bestId < 0 || s > bestScore) {
          bestId = id;
          bestScore = s;
        }
      }
      convert(bestId, type, false);
      converted = true;
    }
    ++step;
    if (!converted || genericIds().empty()) break;
  }

  // Whatever the economy never admitted becomes residential; phase 4 needs
  // every plot typed.
  for (const int id : genericIds()) convert(id, PlotKind::Residential, true);
  result.steps = step;
  return result;
}

std::string TraceText(const DifferentiationResult& result)
{
  std::string out;
  char line[160];
  for (const ConversionRecord& r : result.trace) {
    std::snprintf(line, sizeof(line), "%d\t%s\t%d\t%d\t%d\t%g\t%g\n", r.step,
                  PlotKindName(r.type), r.plotId, r.workers, r.employed, r.goods, r.income);
    out += line;
  }
  return out;
}

}  // namespace citygen
