#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("MACROKIN_CLI");
  return env ? env : "";
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunResult run_cli(const std::string& args, const fs::path& scratch) {
  fs::create_directories(scratch);
  fs::path out = scratch / "stdout.txt", err = scratch / "stderr.txt";
  std::string cmd = "'" + cli_path() + "' " + args + " >'" + out.string() +
                    "' 2>'" + err.string() + "'";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path fresh_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("macrokin_clitest_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("simulate writes provenance-stamped artifacts and exits 0") {
  REQUIRE(!cli_path().empty());
  fs::path dir = fresh_dir("sim0");
  RunResult r = run_cli(
      "simulate --model ehrenfest --N 20 --horizon 2 --sample-dt 1 --seed 1 "
      "--output '" + (dir / "run").string() + "'",
      dir);
  CHECK(r.exit_code == 0);
  std::string traj = slurp(dir / "run" / "trajectory.csv");
  REQUIRE(!traj.empty());
  CHECK(traj.rfind("# macrokin 0.1.0 config=", 0) == 0);
  std::string first_line = traj.substr(0, traj.find('\n'));
  CHECK(first_line.size() == std::string("# macrokin 0.1.0 config=").size() + 16);
  auto summary = nlohmann::json::parse(slurp(dir / "run" / "summary.json"));
  CHECK(summary["tool"] == "macrokin");
  CHECK(summary["config"]["intensity_convention"] == "kurtz");
  CHECK(summary["config"]["model"] == "ehrenfest");
  CHECK(summary["result"]["truncated"] == false);
  // counts on the grid rows conserve the population
  CHECK(summary["result"]["final_counts"].size() == 2);
  long long a = summary["result"]["final_counts"][0].get<long long>();
  long long b = summary["result"]["final_counts"][1].get<long long>();
  CHECK(a + b == 20);
  fs::remove_all(dir);
}

TEST_CASE("a missing network file fails with the path in the message") {
  REQUIRE(!cli_path().empty());
  fs::path dir = fresh_dir("nofile");
  RunResult r = run_cli(
      "simulate --network /no/such/reactions.txt --output '" + dir.string() + "'",
      dir);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("/no/such/reactions.txt") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("an exhausted event budget in every replica exits 2") {
  REQUIRE(!cli_path().empty());
  fs::path dir = fresh_dir("trunc");
  RunResult r = run_cli(
      "simulate --model ehrenfest --N 50 --horizon 10 --sample-dt 1 --seed 4 "
      "--max-events 3 --output '" + (dir / "run").string() + "'",
      dir);
  CHECK(r.exit_code == 2);
  auto summary = nlohmann::json::parse(slurp(dir / "run" / "summary.json"));
  CHECK(summary["result"]["truncated"] == true);
  fs::remove_all(dir);
}

TEST_CASE("bad flags and unknown models exit 1") {
  REQUIRE(!cli_path().empty());
  fs::path dir = fresh_dir("badflag");
  CHECK(run_cli("simulate --no-such-flag 1", dir).exit_code == 1);
  CHECK(run_cli("frobnicate", dir).exit_code == 1);
  RunResult r = run_cli(
      "simulate --model not_a_model --output '" + dir.string() + "'", dir);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("not_a_model") != std::string::npos);
  // unusable parameter values are configuration errors, not crashes
  CHECK(run_cli("simulate --model ehrenfest --params lambda=abc --output '" +
                    dir.string() + "'",
                dir)
            .exit_code == 1);
  CHECK(run_cli("simulate --model ehrenfest --params typo_knob=1 --output '" +
                    dir.string() + "'",
                dir)
            .exit_code == 1);
  fs::remove_all(dir);
}

TEST_CASE("meanfield rejects a zero integration step") {
  REQUIRE(!cli_path().empty());
  fs::path dir = fresh_dir("zerostep");
  RunResult r = run_cli(
      "meanfield --model ehrenfest --N 10 --horizon 1 --sample-dt 0 "
      "--output '" + dir.string() + "'",
      dir);
  CHECK(r.exit_code == 1);
  fs::remove_all(dir);
}

TEST_CASE("meanfield relaxes the urn to the balanced split") {
  REQUIRE(!cli_path().empty());
  fs::path dir = fresh_dir("mf");
  RunResult r = run_cli(
      "meanfield --model ehrenfest --N 2 --c0 1,0 --horizon 10 "
      "--sample-dt 0.001 --output '" + (dir / "run").string() + "'",
      dir);
  CHECK(r.exit_code == 0);
  auto summary = nlohmann::json::parse(slurp(dir / "run" / "summary.json"));
  double c0 = summary["result"]["final_state"][0].get<double>();
  double c1 = summary["result"]["final_state"][1].get<double>();
  CHECK(std::abs(c0 - 0.5) <= 1e-6);
  CHECK(std::abs(c1 - 0.5) <= 1e-6);
  fs::remove_all(dir);
}

TEST_CASE("meanfield reports the orbit invariant for the predator-prey model") {
  REQUIRE(!cli_path().empty());
  fs::path dir = fresh_dir("mflv");
  RunResult r = run_cli(
      "meanfield --model lotka_volterra --N 100 --c0 1.1,1 --horizon 5 "
      "--sample-dt 0.001 --output '" + (dir / "run").string() + "'",
      dir);
  CHECK(r.exit_code == 0);
  auto summary = nlohmann::json::parse(slurp(dir / "run" / "summary.json"));
  REQUIRE(summary["result"].contains("first_integral"));
  double drift = summary["result"]["first_integral"]["max_rel_drift"].get<double>();
  CHECK(drift <= 1e-5);
  fs::remove_all(dir);
}

TEST_CASE("repeating an invocation reproduces every byte") {
  REQUIRE(!cli_path().empty());
  fs::path dir = fresh_dir("repeat");
  std::string base =
      "simulate --model ehrenfest --N 30 --horizon 3 --sample-dt 0.5 "
      "--replicas 4 --seed 77 --output '";
  RunResult r1 = run_cli(base + (dir / "a").string() + "'", dir);
  RunResult r2 = run_cli(base + (dir / "b").string() + "'", dir);
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  std::string ja = slurp(dir / "a" / "ensemble.json");
  CHECK(!ja.empty());
  CHECK(ja == slurp(dir / "b" / "ensemble.json"));
  CHECK(slurp(dir / "a" / "finals.csv") == slurp(dir / "b" / "finals.csv"));
  fs::remove_all(dir);
}

TEST_CASE("equilibrium flags the predator-prey infeasibility") {
  REQUIRE(!cli_path().empty());
  fs::path dir = fresh_dir("eqlv");
  RunResult r = run_cli(
      "equilibrium --model lotka_volterra --N 10 --output '" +
          (dir / "run").string() + "'",
      dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("INFEASIBLE") != std::string::npos);
  auto j = nlohmann::json::parse(slurp(dir / "run" / "equilibrium.json"));
  CHECK(j["unitarity"]["feasible"] == false);
  fs::remove_all(dir);
}

TEST_CASE("equilibrium emits the exact law and the projected profile") {
  REQUIRE(!cli_path().empty());
  fs::path dir = fresh_dir("eqeh");
  RunResult r = run_cli(
      "equilibrium --model ehrenfest --N 12 --output '" +
          (dir / "run").string() + "'",
      dir);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(dir / "run" / "equilibrium.json"));
  CHECK(j["unitarity"]["feasible"] == true);
  CHECK(j["detailed_balance"]["holds"] == true);
  double xi0 = j["unitarity"]["xi"][0].get<double>();
  CHECK(std::abs(xi0 - 0.5) <= 1e-9);
  CHECK(j["exact"]["states"] == 13);
  CHECK(!slurp(dir / "run" / "pi.csv").empty());
  CHECK(!slurp(dir / "run" / "cstar.csv").empty());
  fs::remove_all(dir);
}

TEST_CASE("verify rejects unknown suite names and lists the valid ones") {
  REQUIRE(!cli_path().empty());
  fs::path dir = fresh_dir("vfbad");
  RunResult r = run_cli("verify no_such_suite --output '" + dir.string() + "'",
                        dir);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("ehrenfest") != std::string::npos);
  CHECK(r.err.find("majority") != std::string::npos);
  fs::remove_all(dir);
}
