#pragma once

#include "citygen/Blueprint.hpp"

#include <string>
#include <vector>

namespace citygen {

// Fictive economy of workers, goods and income that gates which building
// type may convert the next generic plot.
struct Economy {
  int workers = 0;
  int employed = 0;
  double goods = 0.0;
  double income = 0.0;

  double unemploymentThreshold = 0.3;
  int workersPerHouse = 4;
  int workersPerIndustry = 3;
  double goodsPerIndustry = 4.0;
  double incomePerIndustry = 3.0;
  int workersPerCommerce = 2;
  double goodsCost = 2.0;
  double moneyCost = 1.0;

  int unemployed() const { return workers - employed; }
  double unemployment() const
  {
    return static_cast<double>(workers - employed) / static_cast<double>(workers > 0 ? workers : 1);
  }
};

bool ResidentialCanConvert(const Economy& e);
bool IndustrialCanConvert(const Economy& e);
bool CommercialCanConvert(const Economy& e);

// Signed neighbour-affinity weights, indexed [type][neighbour type] with
// Residential=0, Commercial=1, Industrial=2. Commerce likes residential and
// its own kind, avoids industry.
struct AffinityMatrix {
  double w[3][3] = {
      // R      C     I
      {1.0, 0.5, -2.0},   // residential
      {1.0, 1.5, -2.0},   // commercial
      {-1.0, -0.5, 1.0},  // industrial
  };
  double neighbourRadius = 25.0;
};

struct ConversionRecord {
  int step = 0;
  PlotKind type = PlotKind::Residential;
  int plotId = 0;
  int workers = 0;
  int employed = 0;
  double goods = 0.0;
  double income = 0.0;
  bool fallback = false;
};

struct DifferentiationResult {
  std::vector<ConversionRecord> trace;
  int steps = 0;
};

// Phase 3: residential, industrial, commercial agents take turns (fixed
// order) converting the best-fitting generic plot until nothing converts;
// stuck generics fall back to residential so phase 4 always receives fully
// typed plots.
DifferentiationResult Differentiate(Blueprint& bp, Economy& econ, const AffinityMatrix& affinity);

// step\ttype\tplot_id\tworkers\temployed\tgoods\tincome per conversion.
std::string TraceText(const DifferentiationResult& result);

}  // namespace citygen
