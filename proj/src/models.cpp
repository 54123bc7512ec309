#include "macrokin/models.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace macrokin {

namespace {

Reaction make_reaction(std::vector<Count> alpha, std::vector<Count> beta, double rate) {
  Reaction r;
  r.alpha = std::move(alpha);
  r.beta = std::move(beta);
  r.rate = rate;
  return r;
}

}  // namespace

ModelSystem ehrenfest(Count N, double lambda) {
  if (N < 1) throw std::invalid_argument("ehrenfest: N must be >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("ehrenfest: lambda must be positive");
  ModelSystem m;
  m.net.species = {"A", "B"};
  m.net.reactions.push_back(make_reaction({1, 0}, {0, 1}, lambda));
  m.net.reactions.push_back(make_reaction({0, 1}, {1, 0}, lambda));
  m.n0 = {N, 0};
  m.N = N;
  return m;
}

double lv_center_prey(double /*mu3*/, double mu6, double K) { return mu6 / K; }
double lv_center_pred(double mu3, double /*mu6*/, double K) { return mu3 / K; }

ModelSystem lotka_volterra(double mu3, double mu6, double K, Count N) {
  if (!(mu3 > 0.0) || !(mu6 > 0.0) || !(K > 0.0))
    throw std::invalid_argument("lotka_volterra: parameters must be positive");
  if (N < 1) throw std::invalid_argument("lotka_volterra: N must be >= 1");
  ModelSystem m;
  m.net.species = {"prey", "predator"};
  m.net.reactions.push_back(make_reaction({1, 0}, {2, 0}, mu3));
  m.net.reactions.push_back(make_reaction({0, 1}, {0, 0}, mu6));
  m.net.reactions.push_back(make_reaction({1, 1}, {0, 2}, K));
  m.n0 = {std::llround(static_cast<double>(N) * lv_center_prey(mu3, mu6, K)),
          std::llround(static_cast<double>(N) * lv_center_pred(mu3, mu6, K))};
  m.N = N;
  return m;
}

ModelSystem wealth_kinetic(Count N, int s_bar, int s_max, double lambda) {
  if (N < 1) throw std::invalid_argument("wealth_kinetic: N must be >= 1");
  if (s_bar < 1) throw std::invalid_argument("wealth_kinetic: s_bar must be >= 1");
  if (s_max < s_bar) throw std::invalid_argument("wealth_kinetic: s_max must be >= s_bar");
  if (!(lambda > 0.0)) throw std::invalid_argument("wealth_kinetic: lambda must be positive");

  const int W = s_max + 1;
  ModelSystem m;
  for (int s = 0; s < W; ++s) m.net.species.push_back("w" + std::to_string(s));

  // giver s1 >= 1 hands one coin to receiver s2; receivers at the top class
  // would leave the ladder (dropped), and s1 = s2+1 transfers change nothing
  for (int s1 = 1; s1 <= s_max; ++s1)
    for (int s2 = 0; s2 < s_max; ++s2) {
      if (s2 == s1 - 1) continue;
      std::vector<Count> alpha(W, 0), beta(W, 0);
      alpha[s1] += 1;
      alpha[s2] += 1;
      beta[s1 - 1] += 1;
      beta[s2 + 1] += 1;
      m.net.reactions.push_back(
          make_reaction(std::move(alpha), std::move(beta), lambda / 2.0));
    }

  m.n0.assign(W, 0);
  m.n0[s_bar] = N;
  m.N = N;
  return m;
}

namespace {

void validate_generator(const std::vector<std::vector<double>>& rates) {
  const std::size_t K = rates.size();
  if (K < 2) throw std::invalid_argument("generator: need at least 2 nodes");
  double scale = 0.0;
  for (const auto& row : rates) {
    if (row.size() != K) throw std::invalid_argument("generator: matrix must be square");
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) throw std::invalid_argument("generator: all rates are zero");
  for (std::size_t i = 0; i < K; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
      if (i != j && rates[i][j] < 0.0)
        throw std::invalid_argument("generator: negative off-diagonal rate");
      sum += rates[i][j];
    }
    if (std::abs(sum) > 1e-9 * scale)
      throw std::invalid_argument("generator: row sums must be zero");
  }
  // strong connectivity: forward and backward reachability from node 0
  auto reach = [&](bool forward) {
    std::vector<char> seen(K, 0);
    std::vector<std::size_t> q{0};
    seen[0] = 1;
    while (!q.empty()) {
      std::size_t v = q.back();
      q.pop_back();
      for (std::size_t w = 0; w < K; ++w) {
        double r = forward ? rates[v][w] : rates[w][v];
        if (w != v && r > 0.0 && !seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  };
  if (!reach(true) || !reach(false))
    throw std::invalid_argument("generator: reducible (not strongly connected)");
}

}  // namespace

ModelSystem pagerank_surfers(const std::vector<std::vector<double>>& rates, Count N) {
  validate_generator(rates);
  if (N < 1) throw std::invalid_argument("pagerank_surfers: N must be >= 1");
  const std::size_t K = rates.size();
  ModelSystem m;
  for (std::size_t i = 0; i < K; ++i) m.net.species.push_back("v" + std::to_string(i + 1));
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j) {
      if (i == j || rates[i][j] <= 0.0) continue;
      std::vector<Count> alpha(K, 0), beta(K, 0);
      alpha[i] = 1;
      beta[j] = 1;
      m.net.reactions.push_back(
          make_reaction(std::move(alpha), std::move(beta), rates[i][j]));
    }
  m.n0.assign(K, 0);
  m.n0[0] = N;
  m.N = N;
  return m;
}

std::vector<double> pagerank_stationary(const std::vector<std::vector<double>>& rates) {
  validate_generator(rates);
  const int K = static_cast<int>(rates.size());
  // stationarity sum_i p_i L_ij = 0 with the last equation replaced by sum = 1
  Eigen::MatrixXd A(K, K);
  for (int j = 0; j < K; ++j)
    for (int i = 0; i < K; ++i) A(j, i) = rates[i][j];
  for (int i = 0; i < K; ++i) A(K - 1, i) = 1.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(K);
  rhs[K - 1] = 1.0;
  Eigen::VectorXd p = A.partialPivLu().solve(rhs);
  return std::vector<double>(p.data(), p.data() + K);
}

std::vector<std::vector<double>> pagerank_demo_rates() {
  // 5-node strongly connected generator with an uneven stationary profile
  std::vector<std::vector<double>> L(5, std::vector<double>(5, 0.0));
  auto edge = [&](int i, int j, double r) {
    L[i][j] = r;
    L[i][i] -= r;
  };
  edge(0, 1, 1.0);
  edge(0, 2, 0.5);
  edge(1, 2, 1.0);
  edge(2, 3, 1.5);
  edge(2, 0, 0.5);
  edge(3, 4, 2.0);
  edge(3, 1, 0.5);
  edge(4, 0, 1.0);
  return L;
}

ReactionNetwork schlogl_network() {
  ReactionNetwork net;
  net.species = {"R"};
  net.reactions.push_back(make_reaction({0}, {1}, 1.0));
  net.reactions.push_back(make_reaction({2}, {3}, 3.0));
  net.reactions.push_back(make_reaction({1}, {0}, 3.0));
  net.reactions.push_back(make_reaction({3}, {2}, 1.0));
  return net;
}

Trajectory schlogl_process(Count n, Count j0, const SimConfig& cfg) {
  if (n < 3) throw std::invalid_argument("schlogl_process: n must be >= 3");
  if (j0 < 0) throw std::invalid_argument("schlogl_process: j0 must be >= 0");
  SimConfig local = cfg;
  local.convention = IntensityConvention::kurtz;  // the rates are stated in this scaling
  return simulate(schlogl_network(), {j0}, n, local);
}

std::vector<ScaledSample> schlogl_scaled(const Trajectory& traj, Count n, double T) {
  if (n < 1) throw std::invalid_argument("schlogl_scaled: n must be >= 1");
  if (traj.samples.empty())
    throw std::invalid_argument("schlogl_scaled: empty trajectory");
  const double sq = std::sqrt(static_cast<double>(n));
  const double quarter = std::pow(static_cast<double>(n), 0.25);
  double cutoff = traj.samples.back().t;
  if (T >= 0.0) {
    if (traj.samples.back().t < sq * T - 1e-9)
      throw std::invalid_argument("schlogl_scaled: source horizon shorter than sqrt(n)*T");
    cutoff = sq * T;
  }
  std::vector<ScaledSample> out;
  for (const auto& s : traj.samples) {
    if (s.t > cutoff + 1e-12) break;
    double y = static_cast<double>(s.counts[0]);
    out.push_back({s.t / sq, quarter * (y / static_cast<double>(n) - 1.0)});
  }
  return out;
}

WealthState wealth_days_new(int N, int s_bar, uint64_t seed) {
  if (N < 2 || N % 2 != 0)
    throw std::invalid_argument("wealth_days: N must be even and >= 2");
  if (s_bar < 1) throw std::invalid_argument("wealth_days: s_bar must be >= 1");
  WealthState st;
  st.coins.assign(N, s_bar);
  st.rng = Rng(seed);
  return st;
}

void wealth_day_step(WealthState& st) {
  const int N = static_cast<int>(st.coins.size());
  std::vector<int> idx(N);
  std::iota(idx.begin(), idx.end(), 0);
  // Fisher-Yates; consecutive entries of the shuffled list form the pairs
  for (int i = N - 1; i > 0; --i) {
    int j = static_cast<int>(st.rng.below(static_cast<uint64_t>(i + 1)));
    std::swap(idx[i], idx[j]);
  }
  for (int k = 0; k + 1 < N; k += 2) {
    int a = idx[k], b = idx[k + 1];
    int pot = 0;
    if (st.coins[a] > 0) {
      --st.coins[a];
      ++pot;
    }
    if (st.coins[b] > 0) {
      --st.coins[b];
      ++pot;
    }
    if (pot == 0) continue;
    int winner = (st.rng.below(2) == 0) ? a : b;
    st.coins[winner] += pot;
  }
  ++st.day;
}

std::vector<long long> coin_histogram(const std::vector<int>& coins) {
  if (coins.empty()) return {};
  int mx = 0;
  for (int c : coins) mx = std::max(mx, c);
  std::vector<long long> hist(static_cast<std::size_t>(mx) + 1, 0);
  for (int c : coins) ++hist[static_cast<std::size_t>(c)];
  return hist;
}

double majority_p_up(int N, int k) {
  if (k < 0 || k > N) throw std::invalid_argument("majority: k out of range");
  double denom = static_cast<double>(N) * (N - 1) * (N - 2);
  return 3.0 * k * (k - 1) * (N - k) / denom;
}

double majority_p_down(int N, int k) {
  if (k < 0 || k > N) throw std::invalid_argument("majority: k out of range");
  double denom = static_cast<double>(N) * (N - 1) * (N - 2);
  return 3.0 * (N - k) * (N - k - 1) * k / denom;
}

int majority_step(int N, int k, Rng& rng) {
  if (N < 3) throw std::invalid_argument("majority: N must be >= 3");
  // three distinct agents; by exchangeability agent i carries +1 iff i < k
  uint64_t i1 = rng.below(static_cast<uint64_t>(N));
  uint64_t i2;
  do i2 = rng.below(static_cast<uint64_t>(N));
  while (i2 == i1);
  uint64_t i3;
  do i3 = rng.below(static_cast<uint64_t>(N));
  while (i3 == i1 || i3 == i2);
  const uint64_t up = static_cast<uint64_t>(k);
  int plus = (i1 < up) + (i2 < up) + (i3 < up);
  if (plus == 2) return k + 1;
  if (plus == 1) return k - 1;
  return k;
}

MajorityOracle majority_oracle(int N) {
  if (N < 3) throw std::invalid_argument("majority: N must be >= 3");
  MajorityOracle o;
  o.absorb_up.assign(N + 1, 0.0);
  o.mean_steps.assign(N + 1, 0.0);
  const int M = N - 1;  // interior states 1..N-1
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
  Eigen::VectorXd bu = Eigen::VectorXd::Zero(M);
  Eigen::VectorXd bm = Eigen::VectorXd::Zero(M);
  for (int k = 1; k <= N - 1; ++k) {
    int j = k - 1;
    double pu = majority_p_up(N, k), pd = majority_p_down(N, k);
    A(j, j) = pu + pd;  // self-loops drop out of both systems
    if (k + 1 <= N - 1) A(j, j + 1) = -pu;
    else bu[j] += pu;   // absorption at N contributes u = 1
    if (k - 1 >= 1) A(j, j - 1) = -pd;
    bm[j] = 1.0;
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  Eigen::VectorXd u = lu.solve(bu);
  Eigen::VectorXd s = lu.solve(bm);
  o.absorb_up[N] = 1.0;
  for (int k = 1; k <= N - 1; ++k) {
    o.absorb_up[k] = u[k - 1];
    o.mean_steps[k] = s[k - 1];
  }
  return o;
}

MajorityRun majority_run(int N, int k0, Rng& rng, long long max_steps) {
  if (k0 < 0 || k0 > N) throw std::invalid_argument("majority: k0 out of range");
  MajorityRun run;
  int k = k0;
  while (k != 0 && k != N) {
    if (run.steps >= max_steps)
      throw std::runtime_error("majority_run: max_steps exceeded before consensus");
    k = majority_step(N, k, rng);
    ++run.steps;
  }
  run.up = (k == N);
  return run;
}

KacRingState kac_ring_new(long long n, double m_or_mu, double p, KacMarks mode,
                          uint64_t seed) {
  if (n < 1) throw std::invalid_argument("kac_ring: n must be >= 1");
  if (!(p >= 0.0) || p >= 0.5)
    throw std::invalid_argument("kac_ring: p must lie in [0, 1/2)");
  KacRingState st;
  st.colors.assign(static_cast<std::size_t>(n), 1);
  st.marked.assign(static_cast<std::size_t>(n), 0);
  st.flip_prob = p;
  st.rng = Rng(seed);
  if (mode == KacMarks::fixed_count) {
    double mi;
    if (std::modf(m_or_mu, &mi) != 0.0 || m_or_mu < 0.0)
      throw std::invalid_argument("kac_ring: fixed_count needs an integer m >= 0");
    long long m = static_cast<long long>(mi);
    if (2 * m >= n) throw std::invalid_argument("kac_ring: need m/n < 1/2");
    std::vector<long long> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    for (long long i = 0; i < m; ++i) {
      long long j = i + static_cast<long long>(
                            st.rng.below(static_cast<uint64_t>(n - i)));
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      st.marked[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = 1;
    }
  } else {
    double mu = m_or_mu;
    if (!(mu >= 0.0) || mu >= 0.5)
      throw std::invalid_argument("kac_ring: need mu in [0, 1/2)");
    for (std::size_t k = 0; k < st.marked.size(); ++k)
      if (st.rng.next_unit() <= mu) st.marked[k] = 1;
  }
  return st;
}

void kac_ring_step(KacRingState& st) {
  const std::size_t n = st.colors.size();
  // ball at site k moves to k+1, flipping if site k is marked; walk backward
  // so the move is in place
  signed char wrap = st.marked[n - 1] ? static_cast<signed char>(-st.colors[n - 1])
                                      : st.colors[n - 1];
  for (std::size_t k = n - 1; k > 0; --k)
    st.colors[k] = st.marked[k - 1] ? static_cast<signed char>(-st.colors[k - 1])
                                    : st.colors[k - 1];
  st.colors[0] = wrap;
  if (st.flip_prob > 0.0) {
    signed char chi = (st.rng.next_unit() <= st.flip_prob) ? 1 : -1;
    if (chi < 0)
      for (auto& c : st.colors) c = static_cast<signed char>(-c);
  }
  ++st.time;
}

double kac_ring_stat(const KacRingState& st) {
  long long sum = 0;
  for (signed char c : st.colors) sum += c;
  return static_cast<double>(sum) / static_cast<double>(st.colors.size());
}

YuleState yule_new(double alpha, uint64_t seed) {
  if (!(alpha >= 0.0) || alpha > 1.0)
    throw std::invalid_argument("yule: alpha must lie in [0, 1]");
  YuleState st;
  st.alpha = alpha;
  st.rng = Rng(seed);
  st.coin_counts = {1};
  st.owner = {0};
  return st;
}

void yule_step(YuleState& st) {
  const int k = static_cast<int>(st.coin_counts.size());  // current residents
  // bonus coin for an old resident: uniform over residents w.p. alpha, else
  // to the owner of a uniformly chosen existing coin
  int target;
  if (st.rng.next_unit() <= st.alpha)
    target = static_cast<int>(st.rng.below(static_cast<uint64_t>(k)));
  else
    target = st.owner[static_cast<std::size_t>(
        st.rng.below(static_cast<uint64_t>(st.owner.size())))];
  ++st.coin_counts[static_cast<std::size_t>(target)];
  st.owner.push_back(target);
  // the newcomer and their single coin
  st.coin_counts.push_back(1);
  st.owner.push_back(k);
}

std::vector<long long> yule_run(double alpha, long long days, uint64_t seed) {
  if (days < 1) throw std::invalid_argument("yule: days must be >= 1");
  YuleState st = yule_new(alpha, seed);
  for (long long d = 1; d < days; ++d) yule_step(st);
  long long mx = 0;
  for (long long c : st.coin_counts) mx = std::max(mx, c);
  std::vector<long long> hist(static_cast<std::size_t>(mx) + 1, 0);
  for (long long c : st.coin_counts) ++hist[static_cast<std::size_t>(c)];
  return hist;
}

std::vector<RankEntry> monkey_text(int n_symbols, long long length, uint64_t seed) {
  if (n_symbols < 2 || n_symbols > 52)
    throw std::invalid_argument("monkey_text: n_symbols must lie in [2, 52]");
  if (length < 1) throw std::invalid_argument("monkey_text: length must be >= 1");
  static const char* kAlphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  Rng rng(seed);
  std::unordered_map<std::string, long long> counts;
  std::string word;
  for (long long i = 0; i < length; ++i) {
    uint64_t key = rng.below(static_cast<uint64_t>(n_symbols) + 1);
    if (key == static_cast<uint64_t>(n_symbols)) {
      if (!word.empty()) {
        ++counts[word];
        word.clear();
      }
    } else {
      word.push_back(kAlphabet[key]);
    }
  }
  if (!word.empty()) ++counts[word];

  std::vector<RankEntry> table;
  table.reserve(counts.size());
  for (auto& [w, c] : counts) table.push_back({w, c});
  std::sort(table.begin(), table.end(), [](const RankEntry& a, const RankEntry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.word < b.word;
  });
  return table;
}

ZipfParams zipf_mandelbrot_params(int n_symbols) {
  if (n_symbols < 2) throw std::invalid_argument("zipf params: n_symbols must be >= 2");
  const double n = static_cast<double>(n_symbols);
  ZipfParams z;
  z.alpha = std::log(n + 1.0) / std::log(n);
  z.B = n / (n - 1.0);
  z.C = std::pow(n, z.alpha - 1.0) / std::pow(n - 1.0, z.alpha);
  return z;
}

std::vector<std::string> model_names() {
  return {"ehrenfest",      "schlogl",  "lotka_volterra", "wealth_days",
          "wealth_kinetic", "majority", "pagerank",       "kac_ring",
          "yule",           "monkey"};
}

}  // namespace macrokin
