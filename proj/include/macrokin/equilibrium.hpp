#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "macrokin/network.hpp"
#include "macrokin/ssa.hpp"

namespace macrokin {

struct UnitarityOptions {
  double tol = 1e-10;       // feasible iff max relative balance defect <= tol
  int max_iter = 400;
  std::vector<double> init; // positive start for xi; empty = all ones
};

struct UnitarityResult {
  bool feasible = false;
  std::vector<double> xi;   // candidate balance point (positive)
  double residual = 0.0;    // max relative defect over complexes, at returned xi
  int iterations = 0;
  bool normalized = false;  // scaled to sum 1 (only done when scaling is free)
};

// Find xi > 0 balancing every complex: production flux into each complex y
// equals exp(<y, ln xi>) times the total rate consuming y. Damped Gauss-Newton
// in log coordinates. When the all-ones vector lies in the conservation span,
// scaling xi is free and the result is normalized to sum 1; otherwise the
// converged point is returned as is (rescaling would break the balance).
UnitarityResult solve_unitarity(const ReactionNetwork& net,
                                const UnitarityOptions& opt = {});

struct DetailedBalanceReport {
  bool holds = false;
  // per forward reaction: flux mismatch against its exact reverse (or its
  // full forward flux when no reverse channel exists)
  std::vector<std::pair<int, double>> defects;
};

DetailedBalanceReport check_detailed_balance(const ReactionNetwork& net,
                                             const std::vector<double>& xi,
                                             double tol = 1e-9);

struct ProjectionResult {
  bool converged = false;
  std::vector<double> c;            // argmin KL(c||xi) on the affine slice
  std::vector<double> multipliers;  // one dual value per conservation vector
  double kl = 0.0;
  double defect = 0.0;              // max |<mu_k, c> - b_k|
  int iterations = 0;
};

// Minimize sum c_i ln(c_i/xi_i) subject to <mu_k, c> = b_k. Stationarity gives
// c_i = xi_i * exp(-1 - sum_k lambda_k mu_k,i); Newton runs on the duals.
ProjectionResult entropy_project(const std::vector<double>& xi,
                                 const ConservationBasis& basis,
                                 const std::vector<double>& b,
                                 double tol = 1e-10, int max_iter = 200);

struct ExactChain {
  std::vector<std::vector<Count>> states;            // BFS discovery order
  std::vector<std::vector<std::pair<int, double>>> jumps;  // per state: (target, rate)
  std::vector<double> exit_rate;                     // q_s = total rate out
  std::vector<double> stationary;                    // pi, sums to 1
  bool reducible = false;   // more than one closed class, or transient states
  int closed_classes = 1;
  Count scale = 0;

  int index_of(const std::vector<Count>& n) const;   // -1 if not enumerated
};

// Enumerate every state reachable from n0 and solve pi Q = 0 on the recurrent
// class. Throws when the reachable set exceeds max_states (the dense solve is
// the design here; keep instances at desk scale).
ExactChain exact_chain(const ReactionNetwork& net, const std::vector<Count>& n0,
                       Count N, long long max_states = 200000,
                       IntensityConvention conv = IntensityConvention::kurtz);

struct ReturnTime {
  double continuous = 0.0;  // mean return time of the continuous chain
  double jump_steps = 0.0;  // mean recurrence of the embedded jump chain
};

// Stationary-law identities: 1/(pi_s q_s) and 1/pihat_s. Requires pi_s > 0.
ReturnTime mean_return_time(const ExactChain& chain, int state);

// Independent route: first-passage linear systems on the generator.
ReturnTime mean_return_time_fp(const ExactChain& chain, int state);

// Smallest grid time t = k*grid_dt with TV(p(t), pi) <= eps, via uniformized
// transition powers (Poisson tail cut at 1e-12). Throws if t_max is passed.
double tv_mixing(const ExactChain& chain, const std::vector<double>& p0,
                 double eps, double grid_dt, double t_max);

// Product-form law Prod (N xi_i)^(n_i) / n_i! over the given states, normalized.
std::vector<double> product_form_stationary(
    const std::vector<std::vector<Count>>& states, const std::vector<double>& xi,
    Count N);

}  // namespace macrokin
