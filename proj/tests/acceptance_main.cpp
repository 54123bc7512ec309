// Acceptance gate: runs the numbered checks and prints one verdict line per
// criterion (details indented under it). Exits nonzero when anything fails.
//
//   acceptance [--criterion k] [--desk] [--cli path]
//
// The CLI path (for the determinism criterion) comes from --cli or the
// MACROKIN_CLI environment variable.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "../src/verify/checks.hpp"

int main(int argc, char** argv) {
  using namespace macrokin::verify;
  int only = 0;
  Scale scale = Scale::full;
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (a == "--desk") {
      scale = Scale::desk;
    } else if (a == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--criterion k] [--desk] [--cli path]\n";
      return 2;
    }
  }
  if (cli.empty())
    if (const char* env = std::getenv("MACROKIN_CLI")) cli = env;

  int failed_criteria = 0, checks_failed = 0, checks_total = 0;
  for (int k = 1; k <= 14; ++k) {
    if (only != 0 && k != only) continue;
    std::vector<CheckResult> results;
    try {
      results = run_criterion(k, scale, cli);
    } catch (const std::exception& e) {
      CheckResult r;
      r.name = "criterion executed without error";
      r.pass = false;
      r.detail = e.what();
      results = {r};
    }
    bool all = true;
    for (const auto& r : results) {
      ++checks_total;
      if (!r.pass) ++checks_failed;
      all = all && r.pass;
    }
    failed_criteria += all ? 0 : 1;
    std::cout << "criterion " << k << ": " << (all ? "PASS" : "FAIL") << "\n";
    for (const auto& r : results)
      std::cout << "  [" << (r.pass ? "pass" : "FAIL") << "] " << r.name
                << " (" << r.detail << ")\n";
    std::cout.flush();
  }
  std::cout << (checks_total - checks_failed) << "/" << checks_total
            << " checks passed";
  if (failed_criteria > 0) std::cout << ", " << failed_criteria << " criteria failing";
  std::cout << "\n";
  return checks_failed == 0 ? 0 : 1;
}
