#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "macrokin/network.hpp"
#include "macrokin/rng.hpp"
#include "macrokin/ssa.hpp"

namespace macrokin {

// A network together with the initial copy numbers and scale it is meant to
// run at. The CLI registry instantiates these from a parameter table.
struct ModelSystem {
  ReactionNetwork net;
  std::vector<Count> n0;
  Count N = 0;
};

// Two-urn relabeling chain: A -> B and B -> A, both at rate lambda, started
// with every ball in urn A. Stationary law is Binomial(N, 1/2).
ModelSystem ehrenfest(Count N, double lambda);

// Prey/predator mass action: prey -> 2 prey @mu3, predator -> 0 @mu6,
// prey + predator -> 2 predator @K. n0 sits at the deterministic center
// (mu6/K, mu3/K) scaled by N (rounded).
ModelSystem lotka_volterra(double mu3, double mu6, double K, Count N);

// The closed-orbit invariant mu6*ln(prey) + mu3*ln(pred) - K*(prey+pred).
double lv_center_prey(double mu3, double mu6, double K);
double lv_center_pred(double mu3, double mu6, double K);

// Wealth-class ladder: species w0..w{s_max} count agents holding s coins.
// Binary channels move one coin from a giver (s1 >= 1) to a receiver: for
// distinct classes (w_s1, w_s2) -> (w_{s1-1}, w_{s2+1}) at lambda/2, and for
// a same-class pair 2 w_s -> w_{s-1} + w_{s+1} at lambda/2. Channels whose
// receiver would leave the ladder (s2 = s_max) are dropped, as are the
// no-op transfers with s1 = s2 + 1. n0 puts all N agents at class s_bar.
ModelSystem wealth_kinetic(Count N, int s_bar, int s_max, double lambda = 1.0);

// Unary hop network from a generator matrix: reaction i -> j at rates[i][j]
// for every positive off-diagonal entry. Requires zero row sums (diagonal =
// -sum of the row's off-diagonal part) and strong connectivity; throws
// std::invalid_argument otherwise. n0 puts all N walkers on node 0.
ModelSystem pagerank_surfers(const std::vector<std::vector<double>>& rates, Count N);

// Stationary probability p of the generator: sum_i p_i rates[i][j] balances
// the outflow at every node j. Same validation as pagerank_surfers.
std::vector<double> pagerank_stationary(const std::vector<std::vector<double>>& rates);

// Fixed 5-node irreducible generator used by the demos and checks.
std::vector<std::vector<double>> pagerank_demo_rates();

// Cubic autocatalysis on one species: 0 -> R @1, 2R -> 3R @3, R -> 0 @3,
// 3R -> 2R @1. Under the default intensity convention at scale n the total
// birth rate at count j is n + 3j(j-1)/n and the total death rate is
// 3j + j(j-1)(j-2)/n^2.
ReactionNetwork schlogl_network();

// Jump simulation of the cubic birth-death process at scale n from count j0.
Trajectory schlogl_process(Count n, Count j0, const SimConfig& cfg);

// Critical-window rescaling x = n^(1/4) (y/n - 1) at time t = t_src / sqrt(n).
// Samples past scaled time T are cut; throws std::invalid_argument when the
// source trajectory does not reach sqrt(n)*T. T < 0 means "transform all".
struct ScaledSample {
  double t;
  double x;
};
std::vector<ScaledSample> schlogl_scaled(const Trajectory& traj, Count n,
                                         double T = -1.0);

// --- synchronous wealth exchange (one step = one day) ---

struct WealthState {
  std::vector<int> coins;  // per agent, non-negative
  long long day = 0;
  Rng rng;
};

// N agents (N even), each starting with s_bar coins.
WealthState wealth_days_new(int N, int s_bar, uint64_t seed);

// One day: a uniform random perfect matching; in each pair every agent with
// at least one coin stakes exactly one, and a uniformly chosen member of the
// pair (bankrupt or not) takes the pot.
void wealth_day_step(WealthState& st);

// counts[s] = number of agents holding exactly s coins.
std::vector<long long> coin_histogram(const std::vector<int>& coins);

// --- majority dynamics on N spins ---

// One update: choose 3 distinct agents uniformly; if their spins split 2:1
// the minority agent flips. State is the count k of +1 spins (agents are
// exchangeable). Returns the new k.
int majority_step(int N, int k, Rng& rng);

// Closed-form kernel entries: probability that k moves up / down.
double majority_p_up(int N, int k);
double majority_p_down(int N, int k);

struct MajorityOracle {
  std::vector<double> absorb_up;   // P(consensus at +1 | start k), k = 0..N
  std::vector<double> mean_steps;  // expected updates until consensus
};
MajorityOracle majority_oracle(int N);

struct MajorityRun {
  bool up = false;        // consensus side
  long long steps = 0;    // updates until absorption
};
MajorityRun majority_run(int N, int k0, Rng& rng,
                         long long max_steps = 1'000'000'000LL);

// --- Kac ring ---

enum class KacMarks { fixed_count, iid_bernoulli };

struct KacRingState {
  std::vector<signed char> colors;   // +1 / -1 per site, all +1 initially
  std::vector<unsigned char> marked; // membership in the flip set Q
  double flip_prob = 0.0;            // p; the global noise is off when p = 0
  long long time = 0;
  Rng rng;
};

// fixed_count: Q is a uniform m-subset (m = m_or_mu, must be integral);
// iid_bernoulli: each site joins Q independently with probability mu.
// Requires mu = m/n (or mu) < 1/2 and p in [0, 1/2).
KacRingState kac_ring_new(long long n, double m_or_mu, double p, KacMarks mode,
                          uint64_t seed);

// One tick: every ball moves one site counterclockwise, flipping sign when it
// leaves a marked site; then, when p > 0, a single global sign chi (equal to
// +1 with probability p, else -1) multiplies every ball.
void kac_ring_step(KacRingState& st);

// Color imbalance (N_white - N_black)/n.
double kac_ring_stat(const KacRingState& st);

// --- Yule growth ---

struct YuleState {
  std::vector<long long> coin_counts;  // per resident, positive
  std::vector<int> owner;              // owner of each coin; drives the
                                       // proportional pick in O(1)
  double alpha = 0.0;
  Rng rng;
};

// Day 1: a single resident holding one coin.
YuleState yule_new(double alpha, uint64_t seed);

// Day k -> k+1: a newcomer arrives with one coin, and one bonus coin goes to
// an old resident - uniformly over the k residents with probability alpha,
// otherwise to the owner of a uniformly chosen old coin (proportional rule).
void yule_step(YuleState& st);

// Runs the growth for the given number of days and returns the histogram
// hist[s] = number of residents holding exactly s coins.
std::vector<long long> yule_run(double alpha, long long days, uint64_t seed);

// --- monkey-at-a-typewriter text ---

struct RankEntry {
  std::string word;
  long long count = 0;
};

// length i.i.d. draws over n_symbols letters plus one space key; words are
// maximal nonspace runs. Sorted by descending count, ties lexicographic.
std::vector<RankEntry> monkey_text(int n_symbols, long long length, uint64_t seed);

struct ZipfParams {
  double alpha = 0.0;
  double B = 0.0;
  double C = 0.0;
};

// Predicted rank-frequency parameters freq(r) ~ C/(r+B)^alpha for the uniform
// model: alpha = ln(n+1)/ln n, B = n/(n-1), C = n^(alpha-1)/(n-1)^alpha.
ZipfParams zipf_mandelbrot_params(int n_symbols);

// Registry names accepted by the CLI --model flag.
std::vector<std::string> model_names();

}  // namespace macrokin
