#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "macrokin/network.hpp"
#include "macrokin/ssa.hpp"

namespace macrokin {

struct ConcentrationReport {
  double threshold = 0.0;
  int violations = 0;
  int replicas = 0;
  double sigma_target = 0.0;
  bool pass = false;
};

// Deviation radius (2*sqrt(2) + 4*sqrt(ln(1/sigma))) / sqrt(N).
double concentration_threshold(Count N, double sigma);

// Fraction of replicas whose terminal concentration n/N lands at L2 distance
// >= threshold from c_star, compared against sigma. A positive
// threshold_override replaces the formula radius (e.g. the 3/sqrt(N) rule).
ConcentrationReport l2_concentration(const std::vector<std::vector<Count>>& finals,
                                     Count N, const std::vector<double>& c_star,
                                     double sigma, double threshold_override = 0.0);

struct FitReport {
  std::string model;        // "exponential" or "power_law"
  double parameter = 0.0;   // decay rate, or power-law exponent
  double fit_min = 0.0;     // x-range actually used
  double fit_max = 0.0;
  double residual = 0.0;    // rms residual in log space
  int points = 0;
};

// Least squares of ln hist[s] against s over bins with hist[s] >= min_count;
// parameter = -slope. Throws std::invalid_argument with fewer than 3 usable bins.
FitReport fit_exponential(const std::vector<double>& hist, double min_count = 5.0);

// Log-log least squares on (x, y) pairs; parameter = -slope. The first
// drop_head entries (in the order given) and entries with y < min_value are
// excluded. Requires >= 10 input points and >= 2 surviving ones.
FitReport fit_power_law(const std::vector<std::pair<double, double>>& xy,
                        int drop_head = 5, double min_value = 10.0);

// Half L1 distance between the empirical law of the samples and pi over the
// enumerated states. Throws when a sample is not among the states.
double empirical_tv(const std::vector<std::vector<Count>>& samples,
                    const std::vector<std::vector<Count>>& states,
                    const std::vector<double>& pi);

struct ReturnTimeMC {
  double mean = 0.0;  // mean jumps to first return, over completed replicas
  double se = 0.0;    // standard error of that mean
  int completed = 0;
  int truncated = 0;  // hit max_jumps or got absorbed elsewhere
};

// Replica r runs on split_seed(seed, r) until the walk first re-enters start.
ReturnTimeMC return_time_mc(const ReactionNetwork& net,
                            const std::vector<Count>& start, Count N,
                            int replicas, uint64_t seed,
                            long long max_jumps = 100'000'000LL,
                            IntensityConvention conv = IntensityConvention::kurtz);

}  // namespace macrokin
