#include "citygen/Cli.hpp"

#include <cstdlib>
#include <string>
#include <vector>

#ifndef CITYGEN_DATA_DIR
#define CITYGEN_DATA_DIR "data"
#endif

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  // Default data dir baked in at build time; --data-dir still overrides.
  bool hasDataDir = false;
  for (const std::string& a : args)
    if (a == "--data-dir" || a.rfind("--data-dir=", 0) == 0) hasDataDir = true;
  if (!hasDataDir && !args.empty()) {
    args.push_back("--data-dir");
    args.push_back(CITYGEN_DATA_DIR);
  }
  return citygen::RunCli(args);
}
