#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "macrokin/network.hpp"
#include "macrokin/rng.hpp"

namespace macrokin {

// How the jump intensity scales with system size N:
//   kurtz:         N^(1 - sum(alpha)) * K * prod falling(n_i, alpha_i)
//   paper_literal: N^(  - sum(alpha)) * K * prod falling(n_i, alpha_i)
// kurtz is the default; it makes unary reactions per-capita (rate K*n_i) and
// the empirical concentration n/N converge to the mass-action ODE.
enum class IntensityConvention { kurtz, paper_literal };

struct SimConfig {
  double horizon = 0.0;
  double sample_dt = 0.0;  // grid spacing; must be in (0, horizon]
  uint64_t seed = 0;
  long long max_events = 1'000'000'000LL;
  IntensityConvention convention = IntensityConvention::kurtz;
};

struct Sample {
  double t;
  std::vector<Count> counts;
};

struct Trajectory {
  std::vector<Sample> samples;  // grid points, first at t=0; strictly increasing t
  long long jump_count = 0;
  uint64_t seed = 0;       // the split seed this replica actually ran on
  bool truncated = false;  // max_events hit; sampling stops at the last event
  bool absorbed = false;   // no enabled reaction; state held to the horizon
  double absorption_time = std::numeric_limits<double>::quiet_NaN();
};

// Jump intensities at state n (length = reaction count). Zero when the state
// cannot supply alpha.
std::vector<double> propensities(const ReactionNetwork& net,
                                 const std::vector<Count>& n, Count N,
                                 IntensityConvention conv = IntensityConvention::kurtz);

struct StepResult {
  double dwell = 0.0;   // exponential holding time (unset when absorbed)
  int reaction = -1;    // fired channel (unset when absorbed)
  bool absorbed = false;
};

// One jump of the direct method: exponential dwell at the total intensity,
// then a cumulative-sum pick over channels in declaration order. Mutates n.
StepResult step(const ReactionNetwork& net, std::vector<Count>& n, Count N, Rng& rng,
                IntensityConvention conv = IntensityConvention::kurtz);

Trajectory simulate(const ReactionNetwork& net, const std::vector<Count>& n0,
                    Count N, const SimConfig& cfg);

// Replica r runs on split_seed(cfg.seed, r). Results are bit-identical for
// any thread count (MACROKIN_THREADS caps the pool).
std::vector<Trajectory> ensemble(const ReactionNetwork& net,
                                 const std::vector<Count>& n0, Count N,
                                 const SimConfig& cfg, int replicas);

int thread_budget();  // MACROKIN_THREADS override, else hardware concurrency

}  // namespace macrokin
