#include "macrokin/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace macrokin {

std::vector<double> gw_rhs(const ReactionNetwork& net, const std::vector<double>& c) {
  if (c.size() != net.species.size())
    throw std::invalid_argument("gw_rhs: concentration width mismatch");
  std::vector<double> d(c.size(), 0.0);
  for (const auto& r : net.reactions) {
    double flux = r.rate;
    for (std::size_t i = 0; i < c.size(); ++i)
      for (Count k = 0; k < r.alpha[i]; ++k) flux *= c[i];
    if (flux == 0.0) continue;
    for (std::size_t i = 0; i < c.size(); ++i)
      d[i] += flux * static_cast<double>(r.beta[i] - r.alpha[i]);
  }
  return d;
}

namespace {

// sparse channel view: wide ladders carry thousands of reactions whose alpha
// and beta touch only a handful of species each
struct SparseChannel {
  double rate;
  std::vector<std::pair<int, Count>> powers;  // (species, alpha_i > 0)
  std::vector<std::pair<int, double>> delta;  // (species, beta_i - alpha_i)
};

std::vector<SparseChannel> compile_rhs(const ReactionNetwork& net) {
  std::vector<SparseChannel> ch(net.reactions.size());
  for (std::size_t r = 0; r < net.reactions.size(); ++r) {
    const Reaction& rx = net.reactions[r];
    ch[r].rate = rx.rate;
    for (std::size_t i = 0; i < rx.alpha.size(); ++i) {
      if (rx.alpha[i] > 0) ch[r].powers.emplace_back(static_cast<int>(i), rx.alpha[i]);
      Count d = rx.beta[i] - rx.alpha[i];
      if (d != 0) ch[r].delta.emplace_back(static_cast<int>(i), static_cast<double>(d));
    }
  }
  return ch;
}

void rhs_into(const std::vector<SparseChannel>& channels,
              const std::vector<double>& c, std::vector<double>& d) {
  std::fill(d.begin(), d.end(), 0.0);
  for (const auto& ch : channels) {
    double flux = ch.rate;
    for (const auto& [i, a] : ch.powers)
      for (Count k = 0; k < a; ++k) flux *= c[i];
    if (flux == 0.0) continue;
    for (const auto& [i, w] : ch.delta) d[i] += flux * w;
  }
}

}  // namespace

OdeResult integrate(const ReactionNetwork& net, const std::vector<double>& c0,
                    const OdeConfig& cfg) {
  if (!(cfg.T > 0.0)) throw std::invalid_argument("integrate: T must be positive");
  if (!(cfg.step_dt > 0.0) || cfg.step_dt > cfg.T)
    throw std::invalid_argument("integrate: step_dt must lie in (0, T]");
  if (c0.size() != net.species.size())
    throw std::invalid_argument("integrate: concentration width mismatch");
  for (double v : c0)
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument("integrate: c0 must be finite and non-negative");

  OdeResult out;
  std::vector<double> c = c0;
  const std::size_t m = c.size();
  const std::vector<SparseChannel> channels = compile_rhs(net);
  std::vector<double> k1(m), k2(m), k3(m), k4(m), tmp(m);

  auto record = [&](double t) {
    out.times.push_back(t);
    out.states.push_back(c);
  };
  record(0.0);

  const long long steps = static_cast<long long>(std::ceil(cfg.T / cfg.step_dt - 1e-12));
  double t = 0.0;
  for (long long s = 0; s < steps; ++s) {
    const double h = std::min(cfg.step_dt, cfg.T - t);
    rhs_into(channels, c, k1);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = c[i] + 0.5 * h * k1[i];
    rhs_into(channels, tmp, k2);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = c[i] + 0.5 * h * k2[i];
    rhs_into(channels, tmp, k3);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = c[i] + h * k3[i];
    rhs_into(channels, tmp, k4);
    bool finite = true;
    for (std::size_t i = 0; i < m; ++i) {
      c[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(c[i])) finite = false;
      if (c[i] < 0.0) {
        // mass-action flows stay non-negative; tiny undershoot is integrator noise
        if (c[i] < -cfg.positivity_floor) ++out.clamped;
        c[i] = 0.0;
      }
    }
    if (!finite) {
      out.aborted = true;
      return out;
    }
    t += h;
    record(t);
  }
  return out;
}

double lyapunov_kl(const std::vector<double>& c, const std::vector<double>& xi) {
  if (c.size() != xi.size()) throw std::invalid_argument("lyapunov_kl: width mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(xi[i] > 0.0)) throw std::invalid_argument("lyapunov_kl: xi must be positive");
    if (c[i] < 0.0) throw std::invalid_argument("lyapunov_kl: c must be non-negative");
    if (c[i] > 0.0) kl += c[i] * std::log(c[i] / xi[i]);
  }
  return kl;
}

double lv_first_integral(double c_prey, double c_pred, double mu3, double mu6,
                         double K) {
  if (!(c_prey > 0.0) || !(c_pred > 0.0))
    throw std::invalid_argument("lv_first_integral: concentrations must be positive");
  return mu6 * std::log(c_prey) + mu3 * std::log(c_pred) - K * (c_prey + c_pred);
}

}  // namespace macrokin
