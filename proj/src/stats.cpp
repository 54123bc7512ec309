#include "macrokin/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "macrokin/rng.hpp"

namespace macrokin {

double concentration_threshold(Count N, double sigma) {
  if (N < 1) throw std::invalid_argument("concentration: N must be >= 1");
  if (!(sigma > 0.0) || sigma >= 1.0)
    throw std::invalid_argument("concentration: sigma must lie in (0, 1)");
  return (2.0 * std::sqrt(2.0) + 4.0 * std::sqrt(std::log(1.0 / sigma))) /
         std::sqrt(static_cast<double>(N));
}

ConcentrationReport l2_concentration(const std::vector<std::vector<Count>>& finals,
                                     Count N, const std::vector<double>& c_star,
                                     double sigma, double threshold_override) {
  if (finals.empty()) throw std::invalid_argument("concentration: empty ensemble");
  ConcentrationReport rep;
  rep.threshold =
      threshold_override > 0.0 ? threshold_override : concentration_threshold(N, sigma);
  rep.sigma_target = sigma;
  rep.replicas = static_cast<int>(finals.size());
  for (const auto& n : finals) {
    if (n.size() != c_star.size())
      throw std::invalid_argument("concentration: state width mismatch");
    double d2 = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      double d = static_cast<double>(n[i]) / static_cast<double>(N) - c_star[i];
      d2 += d * d;
    }
    if (std::sqrt(d2) >= rep.threshold) ++rep.violations;
  }
  rep.pass = static_cast<double>(rep.violations) <=
             sigma * static_cast<double>(rep.replicas);
  return rep;
}

namespace {

// least squares y ~ a + b x; returns (slope, rms residual)
std::pair<double, double> ls_slope(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  const std::size_t m = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit: degenerate x range");
  const double b = sxy / sxx;
  const double a = my - b * mx;
  double rss = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double r = y[i] - a - b * x[i];
    rss += r * r;
  }
  return {b, std::sqrt(rss / m)};
}

}  // namespace

FitReport fit_exponential(const std::vector<double>& hist, double min_count) {
  std::vector<double> xs, ys;
  for (std::size_t s = 0; s < hist.size(); ++s)
    if (hist[s] >= min_count && hist[s] > 0.0) {
      xs.push_back(static_cast<double>(s));
      ys.push_back(std::log(hist[s]));
    }
  if (xs.size() < 3)
    throw std::invalid_argument("fit_exponential: fewer than 3 usable bins");
  auto [slope, rms] = ls_slope(xs, ys);
  FitReport rep;
  rep.model = "exponential";
  rep.parameter = -slope;
  rep.fit_min = xs.front();
  rep.fit_max = xs.back();
  rep.residual = rms;
  rep.points = static_cast<int>(xs.size());
  return rep;
}

FitReport fit_power_law(const std::vector<std::pair<double, double>>& xy,
                        int drop_head, double min_value) {
  if (xy.size() < 10)
    throw std::invalid_argument("fit_power_law: need at least 10 points");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < xy.size(); ++i) {
    if (static_cast<int>(i) < drop_head) continue;
    const auto& [x, y] = xy[i];
    if (!(x > 0.0) || y < min_value || !(y > 0.0)) continue;
    xs.push_back(std::log(x));
    ys.push_back(std::log(y));
  }
  if (xs.size() < 2)
    throw std::invalid_argument("fit_power_law: fewer than 2 points survive trimming");
  auto [slope, rms] = ls_slope(xs, ys);
  FitReport rep;
  rep.model = "power_law";
  rep.parameter = -slope;
  rep.fit_min = std::exp(xs.front());
  rep.fit_max = std::exp(xs.back());
  rep.residual = rms;
  rep.points = static_cast<int>(xs.size());
  return rep;
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Count>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (Count x : v) {
      h ^= static_cast<std::size_t>(x);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

}  // namespace

double empirical_tv(const std::vector<std::vector<Count>>& samples,
                    const std::vector<std::vector<Count>>& states,
                    const std::vector<double>& pi) {
  if (states.size() != pi.size())
    throw std::invalid_argument("empirical_tv: states/pi length mismatch");
  if (samples.empty()) throw std::invalid_argument("empirical_tv: no samples");
  std::unordered_map<std::vector<Count>, std::size_t, VecHash> index;
  index.reserve(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) index.emplace(states[s], s);
  std::vector<double> freq(states.size(), 0.0);
  const double w = 1.0 / static_cast<double>(samples.size());
  for (const auto& n : samples) {
    auto it = index.find(n);
    if (it == index.end())
      throw std::invalid_argument("empirical_tv: sample outside the enumerated states");
    freq[it->second] += w;
  }
  double tv = 0.0;
  for (std::size_t s = 0; s < states.size(); ++s) tv += std::abs(freq[s] - pi[s]);
  return 0.5 * tv;
}

ReturnTimeMC return_time_mc(const ReactionNetwork& net,
                            const std::vector<Count>& start, Count N,
                            int replicas, uint64_t seed, long long max_jumps,
                            IntensityConvention conv) {
  if (replicas < 1) throw std::invalid_argument("return_time_mc: replicas must be >= 1");
  ReturnTimeMC out;
  double sum = 0.0, sum2 = 0.0;
  std::vector<Count> n;
  for (int r = 0; r < replicas; ++r) {
    Rng rng(split_seed(seed, static_cast<uint64_t>(r)));
    n = start;
    long long jumps = 0;
    bool home = false;
    while (jumps < max_jumps) {
      StepResult s = step(net, n, N, rng, conv);
      if (s.absorbed) break;  // stuck away from start: report as truncated
      ++jumps;
      if (n == start) {
        home = true;
        break;
      }
    }
    if (home) {
      ++out.completed;
      sum += static_cast<double>(jumps);
      sum2 += static_cast<double>(jumps) * static_cast<double>(jumps);
    } else {
      ++out.truncated;
    }
  }
  if (out.completed == 0) {
    out.mean = out.se = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.mean = sum / out.completed;
  if (out.completed > 1) {
    double var = (sum2 - sum * sum / out.completed) / (out.completed - 1);
    out.se = std::sqrt(std::max(var, 0.0) / out.completed);
  }
  return out;
}

}  // namespace macrokin
