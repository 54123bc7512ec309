#pragma once

#include <string>
#include <vector>

namespace macrokin::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // the numbers behind the verdict
};

// desk: shrunk instances for interactive runs; full: the pinned gate sizes.
enum class Scale { desk, full };

// Numbered acceptance checks, 1..14. Criterion 14 shells out to the CLI
// binary; pass its path (or read MACROKIN_CLI) - empty path fails the check.
std::vector<CheckResult> run_criterion(int index, Scale scale,
                                       const std::string& cli_path = "");

std::vector<std::string> suite_names();

// Named suites group the criteria by model family and run them at the given
// scale. Throws std::invalid_argument for an unknown suite.
std::vector<CheckResult> run_suite(const std::string& suite, Scale scale);

}  // namespace macrokin::verify
