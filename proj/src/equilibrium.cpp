#include "macrokin/equilibrium.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace macrokin {

namespace {

// distinct complexes (alpha and beta vectors) with stable first-seen ids
struct ComplexTable {
  std::map<std::vector<Count>, int> ids;
  std::vector<std::vector<Count>> complexes;
  std::vector<std::vector<std::pair<int, double>>> producers;  // complex -> (reaction, K)
  std::vector<double> consuming_rate;                          // sum K over alpha == complex

  int intern(const std::vector<Count>& v) {
    auto it = ids.find(v);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(complexes.size());
    ids.emplace(v, id);
    complexes.push_back(v);
    producers.emplace_back();
    consuming_rate.push_back(0.0);
    return id;
  }
};

ComplexTable build_complexes(const ReactionNetwork& net) {
  ComplexTable t;
  for (std::size_t r = 0; r < net.reactions.size(); ++r) {
    int ia = t.intern(net.reactions[r].alpha);
    int ib = t.intern(net.reactions[r].beta);
    t.producers[ib].emplace_back(static_cast<int>(r), net.reactions[r].rate);
    t.consuming_rate[ia] += net.reactions[r].rate;
  }
  return t;
}

double dot_counts(const std::vector<Count>& a, const Eigen::VectorXd& u) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += static_cast<double>(a[i]) * u[i];
  return s;
}

// residual F_y(u) and Jacobian of the complex-balance system in log coords
void balance_residual(const ReactionNetwork& net, const ComplexTable& tab,
                      const Eigen::VectorXd& u, Eigen::VectorXd& F,
                      Eigen::MatrixXd* J) {
  const int nc = static_cast<int>(tab.complexes.size());
  const int m = static_cast<int>(net.species.size());
  F.setZero(nc);
  if (J) J->setZero(nc, m);
  for (int y = 0; y < nc; ++y) {
    for (const auto& [r, K] : tab.producers[y]) {
      const auto& alpha = net.reactions[r].alpha;
      double flux = K * std::exp(dot_counts(alpha, u));
      F[y] += flux;
      if (J)
        for (int i = 0; i < m; ++i)
          if (alpha[i] != 0) (*J)(y, i) += flux * static_cast<double>(alpha[i]);
    }
    const auto& yv = tab.complexes[y];
    double out = tab.consuming_rate[y] * std::exp(dot_counts(yv, u));
    F[y] -= out;
    if (J)
      for (int i = 0; i < m; ++i)
        if (yv[i] != 0) (*J)(y, i) -= out * static_cast<double>(yv[i]);
  }
}

// max_y |in_y - out_y| / max(in_y, out_y): scale-free, so a solver walking
// xi -> 0 (which kills every absolute defect) cannot fake feasibility. A
// complex produced but never consumed (or vice versa) scores exactly 1.
double relative_defect(const ReactionNetwork& net, const ComplexTable& tab,
                       const Eigen::VectorXd& u) {
  double worst = 0.0;
  for (std::size_t y = 0; y < tab.complexes.size(); ++y) {
    double in = 0.0;
    for (const auto& [r, K] : tab.producers[y])
      in += K * std::exp(dot_counts(net.reactions[r].alpha, u));
    double out = tab.consuming_rate[y] * std::exp(dot_counts(tab.complexes[y], u));
    double s = std::max(in, out);
    double d = (s > 0.0) ? std::abs(in - out) / s : 1.0;  // 0/0 only on underflow
    worst = std::max(worst, d);
  }
  return worst;
}

bool all_ones_in_span(const ConservationBasis& basis, int m) {
  if (basis.vectors.empty()) return false;
  // solve basis^T x = 1 in the least-squares sense and check the residual
  Eigen::MatrixXd B(m, static_cast<int>(basis.vectors.size()));
  for (int k = 0; k < B.cols(); ++k)
    for (int i = 0; i < m; ++i) B(i, k) = static_cast<double>(basis.vectors[k][i]);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
  Eigen::VectorXd x = B.colPivHouseholderQr().solve(ones);
  return (B * x - ones).lpNorm<Eigen::Infinity>() < 1e-9;
}

}  // namespace

UnitarityResult solve_unitarity(const ReactionNetwork& net,
                                const UnitarityOptions& opt) {
  validate_network(net);
  const int m = static_cast<int>(net.species.size());
  ComplexTable tab = build_complexes(net);

  Eigen::VectorXd u(m);
  if (opt.init.empty()) {
    u.setZero();
  } else {
    if (static_cast<int>(opt.init.size()) != m)
      throw std::invalid_argument("solve_unitarity: init width mismatch");
    for (int i = 0; i < m; ++i) {
      if (!(opt.init[i] > 0.0))
        throw std::invalid_argument("solve_unitarity: init must be positive");
      u[i] = std::log(opt.init[i]);
    }
  }

  Eigen::VectorXd F;
  Eigen::MatrixXd J;
  UnitarityResult res;
  double lm = 1e-8;  // Levenberg damping, adapted multiplicatively
  balance_residual(net, tab, u, F, &J);
  double f2 = F.squaredNorm();
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    if (relative_defect(net, tab, u) <= 0.1 * opt.tol) break;
    Eigen::MatrixXd H = J.transpose() * J;
    H.diagonal().array() += lm * (H.diagonal().array().abs() + 1e-12);
    Eigen::VectorXd g = J.transpose() * F;
    Eigen::VectorXd du = H.ldlt().solve(-g);
    // cap the log step; exp() must not overflow during the search
    double cap = du.lpNorm<Eigen::Infinity>();
    if (cap > 10.0) du *= 10.0 / cap;
    Eigen::VectorXd u_try = u + du;
    Eigen::VectorXd F_try;
    balance_residual(net, tab, u_try, F_try, nullptr);
    double f2_try = F_try.squaredNorm();
    if (f2_try < f2) {
      u = u_try;
      lm = std::max(lm * 0.3, 1e-12);
      balance_residual(net, tab, u, F, &J);
      f2 = F.squaredNorm();
    } else {
      lm *= 10.0;
      if (lm > 1e12) break;  // stuck: report the best point we have
    }
  }
  res.iterations = it;

  std::vector<double> xi(m);
  for (int i = 0; i < m; ++i) xi[i] = std::exp(u[i]);

  // scaling xi -> s*xi changes every flux of y's balance equation by the same
  // factor exp(<v, y>) only when v = log(s)*ones is orthogonal-compatible,
  // i.e. when all-ones lies in the conservation span; only then normalize
  ConservationBasis basis = conservation_laws(net);
  if (all_ones_in_span(basis, m)) {
    double sum = 0.0;
    for (double v : xi) sum += v;
    for (double& v : xi) v /= sum;
    for (int i = 0; i < m; ++i) u[i] = std::log(xi[i]);
    res.normalized = true;
  }
  res.residual = relative_defect(net, tab, u);
  res.feasible = res.residual <= opt.tol;
  res.xi = std::move(xi);
  return res;
}

DetailedBalanceReport check_detailed_balance(const ReactionNetwork& net,
                                             const std::vector<double>& xi,
                                             double tol) {
  validate_network(net);
  if (xi.size() != net.species.size())
    throw std::invalid_argument("check_detailed_balance: xi width mismatch");
  for (double v : xi)
    if (!(v > 0.0))
      throw std::invalid_argument("check_detailed_balance: xi must be positive");

  auto flux = [&](const Reaction& r) {
    double f = r.rate;
    for (std::size_t i = 0; i < xi.size(); ++i)
      for (Count k = 0; k < r.alpha[i]; ++k) f *= xi[i];
    return f;
  };

  DetailedBalanceReport rep;
  rep.holds = true;
  for (std::size_t r = 0; r < net.reactions.size(); ++r) {
    double fwd = flux(net.reactions[r]);
    double rev = 0.0;
    for (std::size_t q = 0; q < net.reactions.size(); ++q)
      if (net.reactions[q].alpha == net.reactions[r].beta &&
          net.reactions[q].beta == net.reactions[r].alpha)
        rev += flux(net.reactions[q]);
    double defect = fwd - rev;
    rep.defects.emplace_back(static_cast<int>(r), defect);
    if (std::abs(defect) > tol * std::max(1.0, std::max(fwd, rev))) rep.holds = false;
  }
  return rep;
}

ProjectionResult entropy_project(const std::vector<double>& xi,
                                 const ConservationBasis& basis,
                                 const std::vector<double>& b, double tol,
                                 int max_iter) {
  const int m = static_cast<int>(xi.size());
  const int K = static_cast<int>(basis.vectors.size());
  for (double v : xi)
    if (!(v > 0.0)) throw std::invalid_argument("entropy_project: xi must be positive");
  if (static_cast<int>(b.size()) != K)
    throw std::invalid_argument("entropy_project: need one target per basis vector");
  for (const auto& mu : basis.vectors)
    if (static_cast<int>(mu.size()) != m)
      throw std::invalid_argument("entropy_project: basis width mismatch");

  Eigen::VectorXd lam = Eigen::VectorXd::Zero(K);
  Eigen::VectorXd c(m), g(K);
  auto eval = [&](const Eigen::VectorXd& l, Eigen::VectorXd& cv, Eigen::VectorXd& gv) {
    for (int i = 0; i < m; ++i) {
      double e = -1.0;
      for (int k = 0; k < K; ++k) e -= l[k] * static_cast<double>(basis.vectors[k][i]);
      cv[i] = xi[i] * std::exp(e);
    }
    for (int k = 0; k < K; ++k) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += static_cast<double>(basis.vectors[k][i]) * cv[i];
      gv[k] = s - b[k];
    }
  };

  ProjectionResult res;
  eval(lam, c, g);
  int it = 0;
  for (; it < max_iter && g.lpNorm<Eigen::Infinity>() > tol; ++it) {
    Eigen::MatrixXd M(K, K);
    for (int k = 0; k < K; ++k)
      for (int l = k; l < K; ++l) {
        double s = 0.0;
        for (int i = 0; i < m; ++i)
          s += static_cast<double>(basis.vectors[k][i]) *
               static_cast<double>(basis.vectors[l][i]) * c[i];
        M(k, l) = M(l, k) = s;
      }
    Eigen::VectorXd dl = M.ldlt().solve(g);
    if (!dl.allFinite()) break;
    // backtracking keeps the dual ascent monotone in the defect norm
    double base = g.lpNorm<Eigen::Infinity>();
    double step = 1.0;
    Eigen::VectorXd lam_try(K), c_try(m), g_try(K);
    bool improved = false;
    for (int bt = 0; bt < 40; ++bt) {
      lam_try = lam + step * dl;
      eval(lam_try, c_try, g_try);
      if (g_try.allFinite() && g_try.lpNorm<Eigen::Infinity>() < base) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
    lam = lam_try;
    c = c_try;
    g = g_try;
  }
  res.iterations = it;
  res.defect = g.lpNorm<Eigen::Infinity>();
  res.converged = res.defect <= tol;
  res.c.assign(c.data(), c.data() + m);
  res.multipliers.assign(lam.data(), lam.data() + K);
  double kl = 0.0;
  for (int i = 0; i < m; ++i)
    if (c[i] > 0.0) kl += c[i] * std::log(c[i] / xi[i]);
  res.kl = kl;
  return res;
}

int ExactChain::index_of(const std::vector<Count>& n) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == n) return static_cast<int>(i);
  return -1;
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

// closed communicating classes via Tarjan SCC on the jump graph
std::vector<int> closed_class_of(const std::vector<std::vector<std::pair<int, double>>>& jumps,
                                 int& n_closed) {
  const int n = static_cast<int>(jumps.size());
  std::vector<int> comp(n, -1), low(n), num(n, -1), stack_;
  std::vector<bool> on_stack(n, false);
  int counter = 0, n_comp = 0;
  // iterative Tarjan to survive deep chains
  struct Frame { int v; std::size_t edge; };
  for (int root = 0; root < n; ++root) {
    if (num[root] != -1) continue;
    std::vector<Frame> st{{root, 0}};
    while (!st.empty()) {
      auto& [v, e] = st.back();
      if (e == 0) {
        num[v] = low[v] = counter++;
        stack_.push_back(v);
        on_stack[v] = true;
      }
      if (e < jumps[v].size()) {
        int w = jumps[v][e].first;
        ++e;
        if (num[w] == -1)
          st.push_back({w, 0});
        else if (on_stack[w])
          low[v] = std::min(low[v], num[w]);
      } else {
        if (low[v] == num[v]) {
          while (true) {
            int w = stack_.back();
            stack_.pop_back();
            on_stack[w] = false;
            comp[w] = n_comp;
            if (w == v) break;
          }
          ++n_comp;
        }
        int vv = v;
        st.pop_back();
        if (!st.empty()) low[st.back().v] = std::min(low[st.back().v], low[vv]);
      }
    }
  }
  // a class is closed iff no edge leaves it
  std::vector<bool> closed(n_comp, true);
  for (int v = 0; v < n; ++v)
    for (const auto& [w, rate] : jumps[v])
      if (comp[w] != comp[v]) closed[comp[v]] = false;
  n_closed = 0;
  for (bool c : closed) n_closed += c;
  // remap: closed classes keep ids, open states get -1
  std::vector<int> closed_id(n_comp, -1);
  int next = 0;
  for (int c = 0; c < n_comp; ++c)
    if (closed[c]) closed_id[c] = next++;
  std::vector<int> out(n);
  for (int v = 0; v < n; ++v) out[v] = closed_id[comp[v]];
  return out;
}

}  // namespace

ExactChain exact_chain(const ReactionNetwork& net, const std::vector<Count>& n0,
                       Count N, long long max_states, IntensityConvention conv) {
  validate_network(net);
  if (n0.size() != net.species.size())
    throw std::invalid_argument("exact_chain: n0 width mismatch");

  ExactChain chain;
  chain.scale = N;
  std::unordered_map<std::vector<Count>, int, VecHash> index;
  chain.states.push_back(n0);
  index.emplace(n0, 0);

  for (std::size_t head = 0; head < chain.states.size(); ++head) {
    const std::vector<Count> n = chain.states[head];  // copy: vector may realloc
    auto rates = propensities(net, n, N, conv);
    std::vector<std::pair<int, double>> out;
    double q = 0.0;
    for (std::size_t r = 0; r < rates.size(); ++r) {
      if (rates[r] <= 0.0) continue;
      std::vector<Count> next = n;
      for (std::size_t i = 0; i < next.size(); ++i)
        next[i] += net.reactions[r].beta[i] - net.reactions[r].alpha[i];
      auto [it, fresh] = index.emplace(next, static_cast<int>(chain.states.size()));
      if (fresh) {
        if (static_cast<long long>(chain.states.size()) >= max_states)
          throw std::runtime_error("exact_chain: state space exceeds max_states=" +
                                   std::to_string(max_states));
        chain.states.push_back(std::move(next));
      }
      // merge parallel channels into one edge
      bool merged = false;
      for (auto& [tgt, rate] : out)
        if (tgt == it->second) {
          rate += rates[r];
          merged = true;
          break;
        }
      if (!merged) out.emplace_back(it->second, rates[r]);
      q += rates[r];
    }
    chain.jumps.push_back(std::move(out));
    chain.exit_rate.push_back(q);
  }

  const int S = static_cast<int>(chain.states.size());
  int n_closed = 0;
  std::vector<int> closed = closed_class_of(chain.jumps, n_closed);
  chain.closed_classes = std::max(n_closed, 1);
  bool all_in_one = true;
  for (int v = 0; v < S; ++v) all_in_one = all_in_one && closed[v] == 0;
  chain.reducible = !(n_closed == 1 && all_in_one);

  // stationary law on the first closed class (the whole space when irreducible)
  std::vector<int> members;
  for (int v = 0; v < S; ++v)
    if (closed[v] == 0) members.push_back(v);
  if (members.empty()) throw std::runtime_error("exact_chain: no closed class found");

  const int M = static_cast<int>(members.size());
  std::vector<int> local(S, -1);
  for (int j = 0; j < M; ++j) local[members[j]] = j;

  chain.stationary.assign(S, 0.0);
  if (M == 1) {
    chain.stationary[members[0]] = 1.0;
  } else {
    // pi Q = 0 with sum(pi)=1: overwrite one column with the normalization
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);  // A = Q^T restricted
    for (int j = 0; j < M; ++j) {
      int v = members[j];
      for (const auto& [w, rate] : chain.jumps[v]) {
        A(local[w], j) += rate;
      }
      A(j, j) -= chain.exit_rate[v];
    }
    for (int j = 0; j < M; ++j) A(M - 1, j) = 1.0;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M);
    rhs[M - 1] = 1.0;
    Eigen::VectorXd pi = A.partialPivLu().solve(rhs);
    for (int j = 0; j < M; ++j) chain.stationary[members[j]] = std::max(pi[j], 0.0);
    double norm = 0.0;
    for (double v : chain.stationary) norm += v;
    for (double& v : chain.stationary) v /= norm;
  }
  return chain;
}

ReturnTime mean_return_time(const ExactChain& chain, int state) {
  if (state < 0 || state >= static_cast<int>(chain.states.size()))
    throw std::invalid_argument("mean_return_time: state out of range");
  double pi_s = chain.stationary[state];
  if (!(pi_s > 0.0))
    throw std::invalid_argument("mean_return_time: state is transient (pi = 0)");
  ReturnTime rt;
  rt.continuous = 1.0 / (pi_s * chain.exit_rate[state]);
  double z = 0.0;  // normalizer of the embedded chain law pihat ~ pi_s q_s
  for (std::size_t v = 0; v < chain.states.size(); ++v)
    z += chain.stationary[v] * chain.exit_rate[v];
  rt.jump_steps = z / (pi_s * chain.exit_rate[state]);
  return rt;
}

ReturnTime mean_return_time_fp(const ExactChain& chain, int state) {
  if (state < 0 || state >= static_cast<int>(chain.states.size()))
    throw std::invalid_argument("mean_return_time_fp: state out of range");
  if (!(chain.stationary[state] > 0.0))
    throw std::invalid_argument("mean_return_time_fp: state is transient");

  // restrict to the recurrent support (pi > 0) containing `state`
  const int S = static_cast<int>(chain.states.size());
  std::vector<int> members, local(S, -1);
  for (int v = 0; v < S; ++v)
    if (chain.stationary[v] > 0.0) {
      local[v] = static_cast<int>(members.size());
      members.push_back(v);
    }
  const int M = static_cast<int>(members.size());
  const int s = local[state];

  ReturnTime rt;
  if (M == 1) {
    // single absorbing state: the chain never leaves, return time is undefined;
    // treat as infinite jumps? the stationary formula would divide by q=0
    throw std::invalid_argument("mean_return_time_fp: absorbing singleton");
  }

  // continuous: h_v = E_v[time to hit s], h_s = 0, Q h = -1 elsewhere
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M);
  for (int j = 0; j < M; ++j) {
    int v = members[j];
    if (j == s) {
      A(j, j) = 1.0;
      continue;
    }
    for (const auto& [w, rate] : chain.jumps[v])
      if (local[w] >= 0) A(j, local[w]) += rate;
    A(j, j) -= chain.exit_rate[v];
    rhs[j] = -1.0;
  }
  Eigen::VectorXd h = A.partialPivLu().solve(rhs);
  double cont = 1.0 / chain.exit_rate[state];
  for (const auto& [w, rate] : chain.jumps[state])
    cont += rate / chain.exit_rate[state] * h[local[w]];
  rt.continuous = cont;

  // embedded chain: k_v = 1 + sum_w P(v,w) k_w, k_s = 0
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(M, M);
  Eigen::VectorXd rb = Eigen::VectorXd::Zero(M);
  for (int j = 0; j < M; ++j) {
    int v = members[j];
    B(j, j) = 1.0;
    if (j == s) continue;
    for (const auto& [w, rate] : chain.jumps[v])
      if (local[w] >= 0) B(j, local[w]) -= rate / chain.exit_rate[v];
    rb[j] = 1.0;
  }
  Eigen::VectorXd k = B.partialPivLu().solve(rb);
  double steps = 1.0;
  for (const auto& [w, rate] : chain.jumps[state])
    steps += rate / chain.exit_rate[state] * k[local[w]];
  rt.jump_steps = steps;
  return rt;
}

double tv_mixing(const ExactChain& chain, const std::vector<double>& p0,
                 double eps, double grid_dt, double t_max) {
  const int S = static_cast<int>(chain.states.size());
  if (static_cast<int>(p0.size()) != S)
    throw std::invalid_argument("tv_mixing: p0 width mismatch");
  double sum = 0.0;
  for (double v : p0) {
    if (v < 0.0) throw std::invalid_argument("tv_mixing: p0 must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("tv_mixing: p0 must sum to 1");
  if (!(grid_dt > 0.0) || !(t_max >= 0.0))
    throw std::invalid_argument("tv_mixing: bad grid");

  double q_max = 0.0;
  for (double q : chain.exit_rate) q_max = std::max(q, q_max);
  if (q_max <= 0.0) return 0.0;  // single absorbing state: already stationary

  // uniformized kernel P = I + Q/q_max, kept sparse
  auto apply_P = [&](const std::vector<double>& v) {
    std::vector<double> out(S, 0.0);
    for (int s = 0; s < S; ++s) {
      double stay = 1.0 - chain.exit_rate[s] / q_max;
      out[s] += v[s] * stay;
      for (const auto& [w, rate] : chain.jumps[s]) out[w] += v[s] * rate / q_max;
    }
    return out;
  };

  auto tv_at = [&](double t) {
    const double a = q_max * t;
    // Poisson(a) weights until the tail drops below 1e-12
    std::vector<double> v = p0, acc(S, 0.0);
    double logw = -a;  // log weight of k=0
    double cum = 0.0;
    for (long long k = 0;; ++k) {
      double w = std::exp(logw);
      for (int s = 0; s < S; ++s) acc[s] += w * v[s];
      cum += w;
      if (cum >= 1.0 - 1e-12 && static_cast<double>(k) >= a) break;
      if (k > 200 + static_cast<long long>(4.0 * a + 40.0 * std::sqrt(a + 1.0)))
        break;  // safety: tail is numerically dead
      v = apply_P(v);
      logw += std::log(a) - std::log(static_cast<double>(k + 1));
    }
    double tv = 0.0;
    for (int s = 0; s < S; ++s) tv += std::abs(acc[s] - chain.stationary[s]);
    return 0.5 * tv;
  };

  for (double t = 0.0; t <= t_max + 1e-15; t += grid_dt)
    if (tv_at(t) <= eps) return t;
  throw std::runtime_error("tv_mixing: eps not reached by t_max");
}

std::vector<double> product_form_stationary(
    const std::vector<std::vector<Count>>& states, const std::vector<double>& xi,
    Count N) {
  if (states.empty()) throw std::invalid_argument("product_form_stationary: no states");
  for (double v : xi)
    if (!(v > 0.0))
      throw std::invalid_argument("product_form_stationary: xi must be positive");
  std::vector<double> logp(states.size());
  double mx = -1e300;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto& n = states[s];
    if (n.size() != xi.size())
      throw std::invalid_argument("product_form_stationary: state width mismatch");
    double lp = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      lp += static_cast<double>(n[i]) * std::log(static_cast<double>(N) * xi[i]);
      lp -= std::lgamma(static_cast<double>(n[i]) + 1.0);
    }
    logp[s] = lp;
    mx = std::max(mx, lp);
  }
  double z = 0.0;
  for (double lp : logp) z += std::exp(lp - mx);
  std::vector<double> out(states.size());
  for (std::size_t s = 0; s < states.size(); ++s)
    out[s] = std::exp(logp[s] - mx) / z;
  return out;
}

}  // namespace macrokin
