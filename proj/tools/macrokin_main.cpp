// Command-line front end: simulate / meanfield / equilibrium / verify.
// Every artifact is written atomically and carries the tool version plus a
// hash of the resolved configuration, so reruns are byte-comparable.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "../src/verify/checks.hpp"
#include "macrokin/equilibrium.hpp"
#include "macrokin/io.hpp"
#include "macrokin/meanfield.hpp"
#include "macrokin/models.hpp"
#include "macrokin/network.hpp"
#include "macrokin/ssa.hpp"
#include "macrokin/stats.hpp"
#include "macrokin/version.hpp"

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace macrokin;

// configuration problems exit with code 1; runtime truncation with code 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string network_file;
  std::string model;
  std::vector<std::string> params;
  Count N = 100;
  double horizon = 10.0;
  double sample_dt = 1.0;
  int replicas = 1;
  uint64_t seed = 1;
  std::string output = ".";
  std::string format = "csv";
  long long max_events = 1'000'000'000LL;
  long long max_states = 200000;
  std::string convention = "kurtz";
  std::string c0;
};

void add_common(CLI::App* cmd, Options& o, bool with_c0) {
  cmd->add_option("--network", o.network_file, "reaction network text file");
  cmd->add_option("--model", o.model, "built-in model name");
  cmd->add_option("--params", o.params, "model/run parameters as k=v")
      ->take_all();
  cmd->add_option("--N", o.N, "system scale (population)");
  cmd->add_option("--horizon", o.horizon, "simulated time span");
  cmd->add_option("--sample-dt", o.sample_dt,
                  "output grid spacing (integration step for meanfield)");
  cmd->add_option("--replicas", o.replicas, "independent replicas");
  cmd->add_option("--seed", o.seed, "master seed; replica r runs a split stream");
  cmd->add_option("--output", o.output, "output directory");
  cmd->add_option("--format", o.format, "table format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--max-events", o.max_events, "per-replica jump budget");
  cmd->add_option("--max-states", o.max_states, "state cap for exact analysis");
  cmd->add_option("--intensity-convention", o.convention,
                  "kurtz (density-scaled) or paper-literal")
      ->check(CLI::IsMember({"kurtz", "paper-literal"}));
  if (with_c0)
    cmd->add_option("--c0", o.c0, "comma-separated start concentrations");
}

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> out;
  for (const auto& kv : raw) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("--params expects k=v, got '" + kv + "'");
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    try {
      std::size_t pos = 0;
      double v = std::stod(val, &pos);
      if (pos != val.size()) throw std::invalid_argument("trailing junk");
      out[key] = v;
    } catch (const std::exception&) {
      throw ConfigError("--params " + key + ": '" + val + "' is not a number");
    }
  }
  return out;
}

double take(std::map<std::string, double>& p, const std::string& key, double dflt) {
  auto it = p.find(key);
  if (it == p.end()) return dflt;
  double v = it->second;
  p.erase(it);
  return v;
}

double peek(const std::map<std::string, double>& p, const std::string& key,
            double dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

void reject_leftovers(const std::map<std::string, double>& p) {
  if (!p.empty())
    throw ConfigError("unknown parameter '" + p.begin()->first + "'");
}

bool network_backed(const std::string& m) {
  return m == "ehrenfest" || m == "lotka_volterra" || m == "wealth_kinetic" ||
         m == "pagerank" || m == "schlogl";
}

std::string joined_model_names() {
  std::string s;
  for (const auto& n : model_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

// n0_<species>=count overrides; returns true when any was given
bool apply_n0_overrides(ModelSystem& sys, std::map<std::string, double>& p) {
  bool any = false;
  for (auto it = p.begin(); it != p.end();) {
    if (it->first.rfind("n0_", 0) == 0) {
      std::string sp = it->first.substr(3);
      int idx = sys.net.species_index(sp);
      if (idx < 0)
        throw ConfigError("n0 override names unknown species '" + sp + "'");
      sys.n0[static_cast<std::size_t>(idx)] =
          static_cast<Count>(std::llround(it->second));
      any = true;
      it = p.erase(it);
    } else {
      ++it;
    }
  }
  return any;
}

ModelSystem build_system(const Options& o, std::map<std::string, double>& p) {
  if (!o.network_file.empty() && !o.model.empty())
    throw ConfigError("give --network or --model, not both");
  if (o.N < 1) throw ConfigError("--N must be >= 1");
  if (!o.network_file.empty()) {
    std::ifstream in(o.network_file);
    if (!in)
      throw ConfigError("cannot open network file: " + o.network_file);
    std::stringstream ss;
    ss << in.rdbuf();
    ModelSystem sys;
    try {
      sys.net = parse_network(ss.str());
    } catch (const ParseError& e) {
      throw ConfigError(o.network_file + ": " + e.what());
    }
    sys.N = o.N;
    sys.n0.assign(sys.net.size(), 0);
    if (!apply_n0_overrides(sys, p)) sys.n0[0] = o.N;  // everyone on species 0
    return sys;
  }
  if (o.model.empty())
    throw ConfigError("one of --network or --model is required");
  ModelSystem sys;
  if (o.model == "ehrenfest") {
    sys = ehrenfest(o.N, take(p, "lambda", 1.0));
  } else if (o.model == "lotka_volterra") {
    sys = lotka_volterra(take(p, "mu3", 1.0), take(p, "mu6", 1.0),
                         take(p, "K", 1.0), o.N);
  } else if (o.model == "wealth_kinetic") {
    int s_bar = static_cast<int>(take(p, "s_bar", 5.0));
    int s_max = static_cast<int>(take(p, "s_max", 10.0 * s_bar));
    sys = wealth_kinetic(o.N, s_bar, s_max, take(p, "lambda", 1.0));
  } else if (o.model == "pagerank") {
    sys = pagerank_surfers(pagerank_demo_rates(), o.N);
  } else if (o.model == "schlogl") {
    sys.net = schlogl_network();
    sys.N = o.N;
    sys.n0 = {static_cast<Count>(
        std::llround(take(p, "j0", static_cast<double>(o.N))))};
  } else if (network_backed(o.model)) {
    throw ConfigError("unhandled model '" + o.model + "'");
  } else {
    throw ConfigError(
        "model '" + o.model +
        "' has no mass-action network (network-backed models: ehrenfest, "
        "lotka_volterra, wealth_kinetic, pagerank, schlogl)");
  }
  apply_n0_overrides(sys, p);
  return sys;
}

// resolved key=value list; hashed sorted, echoed in input order.
// Deliberately excludes the output directory and any parallelism setting:
// neither may influence artifact bytes.
struct ConfigEcho {
  std::vector<std::pair<std::string, std::string>> kv;

  void put(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
  void put_num(const std::string& k, double v) { put(k, format_double(v)); }
  void put_int(const std::string& k, long long v) { put(k, std::to_string(v)); }

  uint64_t hash() const {
    std::vector<std::string> lines;
    lines.reserve(kv.size());
    for (const auto& [k, v] : kv) lines.push_back(k + "=" + v);
    std::sort(lines.begin(), lines.end());
    std::string all;
    for (const auto& l : lines) {
      all += l;
      all += '\n';
    }
    return fnv1a64(all);
  }

  ojson json() const {
    ojson j = ojson::object();
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
  }
};

ConfigEcho echo_common(const std::string& command, const Options& o,
                       const std::map<std::string, double>& pmap) {
  ConfigEcho e;
  e.put("command", command);
  if (!o.network_file.empty()) e.put("network", o.network_file);
  if (!o.model.empty()) e.put("model", o.model);
  for (const auto& [k, v] : pmap) e.put_num("param_" + k, v);
  e.put_int("N", o.N);
  e.put_num("horizon", o.horizon);
  e.put_num("sample_dt", o.sample_dt);
  e.put_int("replicas", o.replicas);
  e.put("seed", std::to_string(o.seed));
  e.put("format", o.format);
  e.put_int("max_events", o.max_events);
  e.put_int("max_states", o.max_states);
  e.put("intensity_convention", o.convention);
  if (!o.c0.empty()) e.put("c0", o.c0);
  return e;
}

ojson preamble(uint64_t hash, const ConfigEcho& echo) {
  ojson j = ojson::object();
  j["tool"] = "macrokin";
  j["version"] = MACROKIN_VERSION;
  j["config_hash"] = hex64(hash);
  j["config"] = echo.json();
  return j;
}

void write_json(const fs::path& path, const ojson& j) {
  atomic_write(path.string(), j.dump(2) + "\n");
}

IntensityConvention convention_of(const Options& o) {
  return o.convention == "paper-literal" ? IntensityConvention::paper_literal
                                         : IntensityConvention::kurtz;
}

std::vector<double> parse_c0(const std::string& text, std::size_t width) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw ConfigError("--c0: '" + item + "' is not a number");
    }
  }
  if (out.size() != width)
    throw ConfigError("--c0 has " + std::to_string(out.size()) +
                      " entries, network has " + std::to_string(width) +
                      " species");
  return out;
}

std::string doubles_csv_row(const std::vector<double>& v) {
  std::string row;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) row += ',';
    row += format_double(v[i]);
  }
  return row;
}

// the run's equilibrium: balance point projected onto the conserved slice
// through n0/N; empty when no balance point (or no slice) exists
struct SliceEquilibrium {
  bool have = false;
  std::vector<double> c_star;
  UnitarityResult u;
  ProjectionResult proj;
};

SliceEquilibrium slice_equilibrium(const ReactionNetwork& net,
                                   const std::vector<Count>& n0, Count N) {
  SliceEquilibrium out;
  out.u = solve_unitarity(net);
  if (!out.u.feasible) return out;
  ConservationBasis basis = conservation_laws(net);
  if (basis.dimension() == 0) return out;
  std::vector<double> b(basis.dimension());
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n0.size(); ++i)
      s += static_cast<double>(basis.vectors[k][i]) *
           static_cast<double>(n0[i]);
    b[k] = s / static_cast<double>(N);
  }
  out.proj = entropy_project(out.u.xi, basis, b);
  if (out.proj.converged) {
    out.have = true;
    out.c_star = out.proj.c;
  }
  return out;
}

// ---- simulate: models without a mass-action network ----

int simulate_special(const Options& o, std::map<std::string, double> p,
                     const ConfigEcho& echo) {
  const uint64_t h = echo.hash();
  const fs::path out(o.output);
  ojson summary = preamble(h, echo);
  int exit_code = 0;

  if (o.model == "wealth_days") {
    int N = static_cast<int>(o.N);
    int s_bar = static_cast<int>(take(p, "s_bar", 5.0));
    long long days = static_cast<long long>(take(p, "days", 10000.0));
    long long burn = static_cast<long long>(take(p, "burn", 2000.0));
    reject_leftovers(p);
    if (days < 1 || burn < 0) throw ConfigError("days must be >= 1, burn >= 0");
    WealthState st = wealth_days_new(N, s_bar, o.seed);
    for (long long d = 0; d < burn; ++d) wealth_day_step(st);
    std::vector<double> acc;
    for (long long d = 0; d < days; ++d) {
      wealth_day_step(st);
      auto hist = coin_histogram(st.coins);
      if (hist.size() > acc.size()) acc.resize(hist.size(), 0.0);
      for (std::size_t s = 0; s < hist.size(); ++s)
        acc[s] += static_cast<double>(hist[s]);
    }
    for (double& v : acc) v /= static_cast<double>(days);
    summary["result"] = {{"agents", N},
                         {"mean_coins", s_bar},
                         {"burn_days", burn},
                         {"averaged_days", days}};
    try {
      FitReport fit = fit_exponential(acc);
      summary["result"]["fit"] = {{"model", fit.model},
                                  {"rate", fit.parameter},
                                  {"fit_min", fit.fit_min},
                                  {"fit_max", fit.fit_max},
                                  {"rms_log_residual", fit.residual},
                                  {"points", fit.points}};
      summary["result"]["expected_rate"] =
          std::log((static_cast<double>(s_bar) + 1.0) /
                   static_cast<double>(s_bar));
    } catch (const std::exception& e) {
      summary["result"]["fit_skipped"] = e.what();
    }
    if (o.format == "csv")
      atomic_write((out / "histogram.csv").string(), histogram_csv("s", acc, h));
    else
      summary["result"]["histogram"] = acc;
  } else if (o.model == "majority") {
    int N = static_cast<int>(o.N);
    int k0 = static_cast<int>(take(p, "k0", std::ceil((N + 1) / 2.0)));
    reject_leftovers(p);
    if (o.replicas < 1) throw ConfigError("--replicas must be >= 1");
    int ups = 0, truncated = 0;
    double ssum = 0.0, ssq = 0.0;
    for (int r = 0; r < o.replicas; ++r) {
      Rng rng(split_seed(o.seed, static_cast<uint64_t>(r)));
      try {
        MajorityRun run = majority_run(N, k0, rng, o.max_events);
        ups += run.up ? 1 : 0;
        ssum += static_cast<double>(run.steps);
        ssq += static_cast<double>(run.steps) * static_cast<double>(run.steps);
      } catch (const std::runtime_error&) {
        ++truncated;
      }
    }
    int done = o.replicas - truncated;
    summary["result"] = {{"agents", N}, {"k0", k0}, {"runs", o.replicas},
                         {"consensus_runs", done},
                         {"truncated_runs", truncated}};
    if (done > 0) {
      double mean = ssum / done;
      summary["result"]["fraction_up"] = static_cast<double>(ups) / done;
      summary["result"]["mean_steps"] = mean;
      if (done > 1)
        summary["result"]["se_steps"] =
            std::sqrt(std::max(0.0, (ssq - ssum * ssum / done) / (done - 1)) /
                      done);
    }
    if (N <= 25) {
      MajorityOracle oracle = majority_oracle(N);
      summary["result"]["oracle"] = {{"absorb_up", oracle.absorb_up[k0]},
                                     {"mean_steps", oracle.mean_steps[k0]}};
    }
    if (truncated == o.replicas) exit_code = 2;
  } else if (o.model == "kac_ring") {
    long long n = static_cast<long long>(take(p, "n", 1000.0));
    bool fixed = p.count("m") > 0;
    double m_or_mu = fixed ? take(p, "m", 0.0) : take(p, "mu", 0.1);
    double prob = take(p, "p", 0.0);
    long long steps =
        static_cast<long long>(take(p, "steps", static_cast<double>(2 * n)));
    reject_leftovers(p);
    if (steps < 0) throw ConfigError("steps must be >= 0");
    KacRingState st =
        kac_ring_new(n, m_or_mu, prob,
                     fixed ? KacMarks::fixed_count : KacMarks::iid_bernoulli,
                     o.seed);
    std::string csv = csv_provenance(h) + "t,imbalance\n";
    ojson series = ojson::array();
    for (long long t = 0; t <= steps; ++t) {
      if (t > 0) kac_ring_step(st);
      double s = kac_ring_stat(st);
      if (o.format == "csv")
        csv += std::to_string(t) + "," + format_double(s) + "\n";
      else
        series.push_back(s);
    }
    summary["result"] = {{"sites", n},
                         {"marks", fixed ? "fixed_count" : "iid_bernoulli"},
                         {"m_or_mu", m_or_mu},
                         {"noise_p", prob},
                         {"steps", steps},
                         {"final_imbalance", kac_ring_stat(st)}};
    if (o.format == "csv")
      atomic_write((out / "trajectory.csv").string(), csv);
    else
      summary["result"]["imbalance"] = series;
  } else if (o.model == "yule") {
    double alpha = take(p, "alpha", 0.0);
    long long days = static_cast<long long>(take(p, "days", 100000.0));
    reject_leftovers(p);
    auto hist = yule_run(alpha, days, o.seed);
    std::vector<double> histd(hist.begin(), hist.end());
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t s = 1; s < histd.size(); ++s)
      if (histd[s] > 0.0) pairs.emplace_back(static_cast<double>(s), histd[s]);
    summary["result"] = {{"alpha", alpha},
                         {"days", days},
                         {"predicted_exponent", 3.0 + alpha / (1.0 - alpha)}};
    try {
      FitReport fit = fit_power_law(pairs);
      summary["result"]["fit"] = {{"model", fit.model},
                                  {"exponent", fit.parameter},
                                  {"fit_min", fit.fit_min},
                                  {"fit_max", fit.fit_max},
                                  {"rms_log_residual", fit.residual},
                                  {"points", fit.points}};
    } catch (const std::exception& e) {
      summary["result"]["fit_skipped"] = e.what();
    }
    if (o.format == "csv")
      atomic_write((out / "histogram.csv").string(),
                   histogram_csv("s", histd, h));
    else
      summary["result"]["histogram"] = histd;
  } else if (o.model == "monkey") {
    int n = static_cast<int>(take(p, "n", 4.0));
    long long length = static_cast<long long>(take(p, "length", 1000000.0));
    reject_leftovers(p);
    auto table = monkey_text(n, length, o.seed);
    ZipfParams z = zipf_mandelbrot_params(n);
    summary["result"] = {{"symbols", n},
                         {"length", length},
                         {"distinct_words", table.size()},
                         {"zipf", {{"alpha", z.alpha}, {"B", z.B}, {"C", z.C}}}};
    atomic_write((out / "ranks.csv").string(), rank_table_csv(table, h));
  } else {
    throw ConfigError("unknown model '" + o.model +
                      "' (available: " + joined_model_names() + ")");
  }

  write_json(out / "summary.json", summary);
  return exit_code;
}

// ---- simulate: mass-action networks ----

int cmd_simulate(const Options& o) {
  auto pmap = parse_params(o.params);
  ConfigEcho echo = echo_common("simulate", o, pmap);
  fs::create_directories(o.output);
  const fs::path out(o.output);

  if (!o.model.empty() && !network_backed(o.model) && o.network_file.empty())
    return simulate_special(o, pmap, echo);

  auto work = pmap;
  ModelSystem sys = build_system(o, work);
  reject_leftovers(work);
  if (o.replicas < 1) throw ConfigError("--replicas must be >= 1");

  SimConfig cfg;
  cfg.horizon = o.horizon;
  cfg.sample_dt = o.sample_dt;
  cfg.seed = o.seed;
  cfg.max_events = o.max_events;
  cfg.convention = convention_of(o);
  const uint64_t h = echo.hash();

  if (o.replicas == 1) {
    Trajectory tr = simulate(sys.net, sys.n0, sys.N, cfg);
    ojson summary = preamble(h, echo);
    ojson res;
    res["species"] = sys.net.species;
    res["jump_count"] = tr.jump_count;
    res["truncated"] = tr.truncated;
    res["absorbed"] = tr.absorbed;
    if (tr.absorbed) res["absorption_time"] = tr.absorption_time;
    res["final_t"] = tr.samples.back().t;
    res["final_counts"] = tr.samples.back().counts;
    summary["result"] = res;
    if (o.format == "csv") {
      atomic_write((out / "trajectory.csv").string(),
                   trajectory_csv(sys.net.species, tr, h));
    } else {
      ojson tj = preamble(h, echo);
      tj["species"] = sys.net.species;
      ojson times = ojson::array(), counts = ojson::array();
      for (const auto& s : tr.samples) {
        times.push_back(s.t);
        counts.push_back(s.counts);
      }
      tj["times"] = times;
      tj["counts"] = counts;
      write_json(out / "trajectory.json", tj);
    }
    write_json(out / "summary.json", summary);
    return tr.truncated ? 2 : 0;
  }

  auto ens = ensemble(sys.net, sys.n0, sys.N, cfg, o.replicas);
  int truncated = 0, absorbed = 0;
  std::vector<double> mean_final(sys.net.size(), 0.0);
  std::vector<std::vector<Count>> finals;
  finals.reserve(ens.size());
  for (const auto& tr : ens) {
    truncated += tr.truncated ? 1 : 0;
    absorbed += tr.absorbed ? 1 : 0;
    const auto& fc = tr.samples.back().counts;
    finals.push_back(fc);
    for (std::size_t i = 0; i < fc.size(); ++i)
      mean_final[i] += static_cast<double>(fc[i]);
  }
  for (double& v : mean_final) v /= static_cast<double>(ens.size());

  ojson j = preamble(h, echo);
  j["species"] = sys.net.species;
  j["replicas"] = o.replicas;
  j["truncated_replicas"] = truncated;
  j["absorbed_replicas"] = absorbed;
  j["mean_final_counts"] = mean_final;

  SliceEquilibrium eq = slice_equilibrium(sys.net, sys.n0, sys.N);
  if (eq.have) {
    ConcentrationReport rep = l2_concentration(finals, sys.N, eq.c_star, 0.01);
    j["concentration"] = {{"c_star", eq.c_star},
                          {"sigma", rep.sigma_target},
                          {"threshold", rep.threshold},
                          {"violations", rep.violations},
                          {"replicas", rep.replicas},
                          {"pass", rep.pass}};
  }

  ojson rows = ojson::array();
  for (std::size_t r = 0; r < ens.size(); ++r) {
    const auto& tr = ens[r];
    ojson row;
    row["replica"] = r;
    row["seed"] = hex64(tr.seed);
    row["jump_count"] = tr.jump_count;
    row["truncated"] = tr.truncated;
    row["absorbed"] = tr.absorbed;
    row["final_counts"] = tr.samples.back().counts;
    rows.push_back(row);
  }
  j["finals"] = rows;
  write_json(out / "ensemble.json", j);

  if (o.format == "csv") {
    std::string csv = csv_provenance(h) + "replica";
    for (const auto& sp : sys.net.species) csv += "," + sp;
    csv += "\n";
    for (std::size_t r = 0; r < finals.size(); ++r) {
      csv += std::to_string(r);
      for (Count c : finals[r]) csv += "," + std::to_string(c);
      csv += "\n";
    }
    atomic_write((out / "finals.csv").string(), csv);
  }
  return truncated == o.replicas ? 2 : 0;
}

// ---- meanfield ----

int cmd_meanfield(const Options& o) {
  auto pmap = parse_params(o.params);
  ConfigEcho echo = echo_common("meanfield", o, pmap);
  fs::create_directories(o.output);
  const fs::path out(o.output);

  double mu3 = peek(pmap, "mu3", 1.0), mu6 = peek(pmap, "mu6", 1.0),
         K = peek(pmap, "K", 1.0);
  auto work = pmap;
  ModelSystem sys = build_system(o, work);
  reject_leftovers(work);

  std::vector<double> c0;
  if (!o.c0.empty()) {
    c0 = parse_c0(o.c0, sys.net.size());
  } else {
    c0.resize(sys.net.size());
    for (std::size_t i = 0; i < c0.size(); ++i)
      c0[i] = static_cast<double>(sys.n0[i]) / static_cast<double>(sys.N);
  }

  OdeConfig oc;
  oc.T = o.horizon;
  oc.step_dt = o.sample_dt;
  OdeResult r = integrate(sys.net, c0, oc);  // rejects non-positive T / step
  const uint64_t h = echo.hash();

  ojson summary = preamble(h, echo);
  ojson res;
  res["species"] = sys.net.species;
  res["steps"] = r.times.size() - 1;
  res["clamped_components"] = r.clamped;
  res["aborted"] = r.aborted;
  res["final_t"] = r.times.back();
  res["final_state"] = r.states.back();

  if (o.model == "lotka_volterra") {
    double v0 = lv_first_integral(c0[0], c0[1], mu3, mu6, K);
    double drift = 0.0;
    for (const auto& c : r.states)
      drift = std::max(
          drift, std::abs(lv_first_integral(c[0], c[1], mu3, mu6, K) - v0));
    res["first_integral"] = {{"start", v0},
                             {"max_abs_drift", drift},
                             {"max_rel_drift", drift / std::abs(v0)}};
  }
  summary["result"] = res;

  if (o.format == "csv") {
    std::string csv = csv_provenance(h) + "t";
    for (const auto& sp : sys.net.species) csv += "," + sp;
    csv += "\n";
    for (std::size_t k = 0; k < r.times.size(); ++k)
      csv += format_double(r.times[k]) + "," + doubles_csv_row(r.states[k]) + "\n";
    atomic_write((out / "trajectory.csv").string(), csv);
  } else {
    ojson tj = preamble(h, echo);
    tj["species"] = sys.net.species;
    tj["times"] = r.times;
    tj["states"] = r.states;
    write_json(out / "trajectory.json", tj);
  }
  write_json(out / "summary.json", summary);
  return r.aborted ? 2 : 0;
}

// ---- equilibrium ----

int cmd_equilibrium(const Options& o) {
  auto pmap = parse_params(o.params);
  ConfigEcho echo = echo_common("equilibrium", o, pmap);
  fs::create_directories(o.output);
  const fs::path out(o.output);

  auto work = pmap;
  ModelSystem sys = build_system(o, work);
  reject_leftovers(work);
  const uint64_t h = echo.hash();

  ojson j = preamble(h, echo);
  j["species"] = sys.net.species;
  ConservationBasis basis = conservation_laws(sys.net);
  j["conservation"] = basis.vectors;
  j["invariants"] = invariant_values(basis, sys.n0);

  UnitarityResult u = solve_unitarity(sys.net);
  j["unitarity"] = {{"feasible", u.feasible},
                    {"residual", u.residual},
                    {"iterations", u.iterations},
                    {"normalized", u.normalized},
                    {"xi", u.xi}};
  if (u.feasible) {
    DetailedBalanceReport db = check_detailed_balance(sys.net, u.xi);
    double worst = 0.0;
    for (const auto& [idx, d] : db.defects) worst = std::max(worst, d);
    j["detailed_balance"] = {{"holds", db.holds}, {"max_defect", worst}};
    std::cout << "balance point: xi found (residual " << u.residual
              << "), detailed balance " << (db.holds ? "holds" : "fails")
              << "\n";
  } else {
    j["detailed_balance"] = nullptr;
    std::cout << "balance point: INFEASIBLE - no positive vector balances "
                 "the complexes (residual "
              << u.residual << ")\n";
  }

  if (u.feasible && basis.dimension() > 0) {
    SliceEquilibrium eq = slice_equilibrium(sys.net, sys.n0, sys.N);
    if (eq.have) {
      j["projection"] = {{"converged", true},
                         {"c_star", eq.c_star},
                         {"kl", eq.proj.kl},
                         {"constraint_defect", eq.proj.defect}};
      if (o.format == "csv") {
        std::string csv = csv_provenance(h) + "species,value\n";
        for (std::size_t i = 0; i < eq.c_star.size(); ++i)
          csv += sys.net.species[i] + "," + format_double(eq.c_star[i]) + "\n";
        atomic_write((out / "cstar.csv").string(), csv);
      }
    } else {
      j["projection"] = {{"converged", false}};
    }
  }

  try {
    ExactChain chain = exact_chain(sys.net, sys.n0, sys.N, o.max_states,
                                   convention_of(o));
    j["exact"] = {{"states", chain.states.size()},
                  {"reducible", chain.reducible},
                  {"closed_classes", chain.closed_classes}};
    if (o.format == "csv")
      atomic_write((out / "pi.csv").string(),
                   states_pi_csv(sys.net.species, chain.states,
                                 chain.stationary, h));
    else
      j["exact"]["stationary"] = chain.stationary;
    std::cout << "exact chain: " << chain.states.size() << " states"
              << (chain.reducible ? " (reducible)" : "") << "\n";
  } catch (const std::runtime_error& e) {
    j["exact"] = nullptr;
    j["exact_skipped"] = e.what();
    std::cout << "exact chain: skipped (" << e.what() << ")\n";
  }

  write_json(out / "equilibrium.json", j);
  return 0;
}

// ---- verify ----

int cmd_verify(const std::string& suite, const std::string& output) {
  auto checks = verify::run_suite(suite, verify::Scale::desk);
  ConfigEcho echo;
  echo.put("command", "verify");
  echo.put("suite", suite);
  echo.put("scale", "desk");
  const uint64_t h = echo.hash();

  int failures = 0;
  for (const auto& c : checks) {
    failures += c.pass ? 0 : 1;
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "\n       "
              << c.detail << "\n";
  }
  std::cout << checks.size() - failures << "/" << checks.size()
            << " checks passed\n";

  ojson j = preamble(h, echo);
  j["suite"] = suite;
  j["scale"] = "desk";
  ojson rows = ojson::array();
  for (const auto& c : checks)
    rows.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = rows;
  j["failures"] = failures;
  fs::create_directories(output);
  write_json(fs::path(output) / "verify.json", j);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"macrokin - stochastic and mean-field mass-action kinetics"};
  app.set_config("--config", "", "read option defaults from an INI file");
  app.require_subcommand(1);

  Options so, mo, eo;
  CLI::App* sim = app.add_subcommand("simulate", "run the jump process");
  add_common(sim, so, false);
  CLI::App* mf =
      app.add_subcommand("meanfield", "integrate the mass-action rate equations");
  add_common(mf, mo, true);
  CLI::App* eq = app.add_subcommand(
      "equilibrium", "balance point, entropy projection, exact stationary law");
  add_common(eq, eo, false);

  std::string suite;
  std::string verify_out = ".";
  CLI::App* vf =
      app.add_subcommand("verify", "run a desk-scale acceptance suite");
  {
    std::string names;
    for (const auto& n : macrokin::verify::suite_names())
      names += (names.empty() ? "" : ", ") + n;
    vf->add_option("suite", suite, "one of: " + names)->required();
    vf->add_option("--output", verify_out, "output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) return cmd_simulate(so);
    if (mf->parsed()) return cmd_meanfield(mo);
    if (eq->parsed()) return cmd_equilibrium(eo);
    if (vf->parsed()) return cmd_verify(suite, verify_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
