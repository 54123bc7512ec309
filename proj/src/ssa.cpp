#include "macrokin/ssa.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace macrokin {

namespace {

void check_state(const ReactionNetwork& net, const std::vector<Count>& n, Count N) {
  if (n.size() != net.species.size())
    throw std::invalid_argument("state width does not match species count");
  for (auto v : n)
    if (v < 0) throw std::invalid_argument("negative species count");
  if (N <= 0) throw std::invalid_argument("scale N must be positive");
}

double one_propensity(const Reaction& r, const std::vector<Count>& n, Count N,
                      IntensityConvention conv) {
  Count order = 0;
  double prod = r.rate;
  for (std::size_t i = 0; i < r.alpha.size(); ++i) {
    const Count a = r.alpha[i];
    if (a == 0) continue;
    order += a;
    if (n[i] < a) return 0.0;
    for (Count k = 0; k < a; ++k) prod *= static_cast<double>(n[i] - k);
  }
  const Count expo = (conv == IntensityConvention::kurtz) ? 1 - order : -order;
  if (expo > 0)
    for (Count k = 0; k < expo; ++k) prod *= static_cast<double>(N);
  else
    for (Count k = 0; k < -expo; ++k) prod /= static_cast<double>(N);
  return prod;
}

}  // namespace

std::vector<double> propensities(const ReactionNetwork& net,
                                 const std::vector<Count>& n, Count N,
                                 IntensityConvention conv) {
  check_state(net, n, N);
  std::vector<double> out(net.reactions.size());
  for (std::size_t r = 0; r < net.reactions.size(); ++r)
    out[r] = one_propensity(net.reactions[r], n, N, conv);
  return out;
}

StepResult step(const ReactionNetwork& net, std::vector<Count>& n, Count N,
                Rng& rng, IntensityConvention conv) {
  check_state(net, n, N);
  double total = 0.0;
  // small fixed buffer would be premature; reuse a thread_local scratch
  static thread_local std::vector<double> rates;
  rates.resize(net.reactions.size());
  for (std::size_t r = 0; r < net.reactions.size(); ++r) {
    rates[r] = one_propensity(net.reactions[r], n, N, conv);
    total += rates[r];
  }
  StepResult res;
  if (total <= 0.0) {
    res.absorbed = true;
    return res;
  }
  res.dwell = rng.exponential(total);
  const double target = rng.next_unit() * total;
  double acc = 0.0;
  int pick = -1;
  for (std::size_t r = 0; r < rates.size(); ++r) {
    if (rates[r] <= 0.0) continue;
    acc += rates[r];
    pick = static_cast<int>(r);
    if (acc >= target) break;  // first channel whose cumulative sum reaches target
  }
  res.reaction = pick;
  const auto& rx = net.reactions[pick];
  for (std::size_t i = 0; i < n.size(); ++i) n[i] += rx.beta[i] - rx.alpha[i];
  return res;
}

namespace {

void check_config(const SimConfig& cfg) {
  if (!(cfg.horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (!(cfg.sample_dt > 0.0) || cfg.sample_dt > cfg.horizon)
    throw std::invalid_argument("sample_dt must lie in (0, horizon]");
  if (cfg.max_events <= 0) throw std::invalid_argument("max_events must be positive");
}

// Sparse per-channel form with the N-power folded into the rate. Networks
// like the wealth ladder carry thousands of channels over dozens of species;
// the dense per-event scan is the whole runtime there.
struct CompiledChannel {
  double scaled_rate;                        // K * N^(1-order) or K * N^(-order)
  std::vector<std::pair<int, Count>> need;   // (species, alpha_i), alpha_i > 0
  std::vector<std::pair<int, Count>> delta;  // (species, beta_i - alpha_i) != 0
};

std::vector<CompiledChannel> compile_network(const ReactionNetwork& net, Count N,
                                             IntensityConvention conv) {
  std::vector<CompiledChannel> ch(net.reactions.size());
  for (std::size_t r = 0; r < net.reactions.size(); ++r) {
    const Reaction& rx = net.reactions[r];
    Count order = 0;
    for (std::size_t i = 0; i < rx.alpha.size(); ++i) {
      if (rx.alpha[i] > 0) {
        ch[r].need.emplace_back(static_cast<int>(i), rx.alpha[i]);
        order += rx.alpha[i];
      }
      Count d = rx.beta[i] - rx.alpha[i];
      if (d != 0) ch[r].delta.emplace_back(static_cast<int>(i), d);
    }
    const Count expo = (conv == IntensityConvention::kurtz) ? 1 - order : -order;
    double scale = rx.rate;
    if (expo > 0)
      for (Count k = 0; k < expo; ++k) scale *= static_cast<double>(N);
    else
      for (Count k = 0; k < -expo; ++k) scale /= static_cast<double>(N);
    ch[r].scaled_rate = scale;
  }
  return ch;
}

inline double channel_rate(const CompiledChannel& c, const std::vector<Count>& n) {
  double prod = c.scaled_rate;
  for (const auto& [i, a] : c.need) {
    const Count ni = n[i];
    if (ni < a) return 0.0;
    prod *= static_cast<double>(ni);
    for (Count k = 1; k < a; ++k) prod *= static_cast<double>(ni - k);
  }
  return prod;
}

}  // namespace

Trajectory simulate(const ReactionNetwork& net, const std::vector<Count>& n0,
                    Count N, const SimConfig& cfg) {
  check_state(net, n0, N);
  check_config(cfg);

  Trajectory traj;
  traj.seed = cfg.seed;
  Rng rng(cfg.seed);

  const std::vector<CompiledChannel> channels = compile_network(net, N, cfg.convention);
  std::vector<double> rates(channels.size());

  std::vector<Count> n = n0;
  std::vector<Count> prev;
  double t = 0.0;
  long long next_grid = 0;  // first grid index not yet emitted

  // emit grid points k*dt not yet written, with k*dt < before and k*dt <= horizon
  auto emit_below = [&](double before, const std::vector<Count>& state) {
    for (;; ++next_grid) {
      double tg = static_cast<double>(next_grid) * cfg.sample_dt;
      if (tg >= before || tg > cfg.horizon) break;
      traj.samples.push_back({tg, state});
    }
  };
  auto emit_upto = [&](double through, const std::vector<Count>& state) {
    for (;; ++next_grid) {
      double tg = static_cast<double>(next_grid) * cfg.sample_dt;
      if (tg > through || tg > cfg.horizon) break;
      traj.samples.push_back({tg, state});
    }
  };

  while (true) {
    prev = n;
    double total = 0.0;
    for (std::size_t r = 0; r < channels.size(); ++r) {
      rates[r] = channel_rate(channels[r], n);
      total += rates[r];
    }
    if (total <= 0.0) {
      // no enabled channel: the state is frozen from t on, grid runs to horizon
      traj.absorbed = true;
      traj.absorption_time = t;
      break;
    }
    const double dwell = rng.exponential(total);
    const double target = rng.next_unit() * total;
    double acc = 0.0;
    int pick = -1;
    for (std::size_t r = 0; r < rates.size(); ++r) {
      if (rates[r] <= 0.0) continue;
      acc += rates[r];
      pick = static_cast<int>(r);
      if (acc >= target) break;
    }
    for (const auto& [i, d] : channels[pick].delta) n[i] += d;
    const double t_next = t + dwell;
    // prev holds on [t, t_next); a grid point at exactly t_next sees the jump
    emit_below(t_next, prev);
    if (t_next > cfg.horizon) {
      n = prev;  // the jump lands past the window and never happened in it
      break;
    }
    t = t_next;
    ++traj.jump_count;
    if (traj.jump_count >= cfg.max_events) {
      traj.truncated = true;
      emit_upto(t, n);
      if (traj.samples.empty() || traj.samples.back().t < t)
        traj.samples.push_back({t, n});
      return traj;
    }
  }

  emit_upto(cfg.horizon, n);
  if (traj.samples.empty() || traj.samples.back().t < cfg.horizon)
    traj.samples.push_back({cfg.horizon, n});
  return traj;
}

int thread_budget() {
  if (const char* env = std::getenv("MACROKIN_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<Trajectory> ensemble(const ReactionNetwork& net,
                                 const std::vector<Count>& n0, Count N,
                                 const SimConfig& cfg, int replicas) {
  if (replicas <= 0) throw std::invalid_argument("replicas must be positive");
  std::vector<Trajectory> out(replicas);
  auto run_range = [&](int lo, int hi) {
    for (int r = lo; r < hi; ++r) {
      SimConfig local = cfg;
      local.seed = split_seed(cfg.seed, static_cast<uint64_t>(r));
      out[r] = simulate(net, n0, N, local);
    }
  };
  int workers = std::min(thread_budget(), replicas);
  if (workers <= 1) {
    run_range(0, replicas);
    return out;
  }
  std::vector<std::thread> pool;
  int chunk = (replicas + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    int lo = w * chunk, hi = std::min(replicas, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(run_range, lo, hi);
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace macrokin
