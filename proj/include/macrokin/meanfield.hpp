#pragma once

#include <vector>

#include "macrokin/network.hpp"

namespace macrokin {

struct OdeConfig {
  double T = 0.0;
  double step_dt = 1e-3;
  double positivity_floor = 0.0;  // components below -floor are still clamped to 0
};

struct OdeResult {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  long long clamped = 0;  // how many negative components were zeroed
  bool aborted = false;   // non-finite state; trajectory ends at last valid time
};

// Mass-action drift: dc/dt = sum_r (beta-alpha) * K_r * prod c^alpha, 0^0 = 1.
std::vector<double> gw_rhs(const ReactionNetwork& net, const std::vector<double>& c);

// Fixed-step classical RK4. Dense output at every step plus the exact T row.
OdeResult integrate(const ReactionNetwork& net, const std::vector<double>& c0,
                    const OdeConfig& cfg);

// KL(c || xi) = sum c_i * ln(c_i/xi_i), with 0*ln 0 = 0. Requires xi_i > 0.
double lyapunov_kl(const std::vector<double>& c, const std::vector<double>& xi);

// Conserved quantity of the predator-prey flow:
//   mu6 * ln(c_prey) + mu3 * ln(c_pred) - K * (c_prey + c_pred)
double lv_first_integral(double c_prey, double c_pred, double mu3, double mu6,
                         double K);

}  // namespace macrokin
