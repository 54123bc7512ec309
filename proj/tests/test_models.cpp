#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "macrokin/meanfield.hpp"
#include "macrokin/models.hpp"
#include "macrokin/network.hpp"
#include "macrokin/rng.hpp"
#include "macrokin/ssa.hpp"

using namespace macrokin;

TEST_CASE("two-urn constructor") {
  ModelSystem m = ehrenfest(100, 2.5);
  REQUIRE(m.net.size() == 2);
  REQUIRE(m.net.reactions.size() == 2);
  CHECK(m.net.reactions[0].rate == 2.5);
  CHECK(m.net.reactions[1].rate == 2.5);
  CHECK(m.n0 == std::vector<Count>{100, 0});
  CHECK(m.N == 100);
  CHECK_THROWS_AS(ehrenfest(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ehrenfest(10, 0.0), std::invalid_argument);
}

TEST_CASE("predator-prey constructor and center") {
  ModelSystem m = lotka_volterra(2.0, 3.0, 0.5, 100);
  REQUIRE(m.net.size() == 2);
  REQUIRE(m.net.reactions.size() == 3);
  CHECK(lv_center_prey(2.0, 3.0, 0.5) == doctest::Approx(6.0));   // mu6/K
  CHECK(lv_center_pred(2.0, 3.0, 0.5) == doctest::Approx(4.0));   // mu3/K
  CHECK(m.n0 == std::vector<Count>{600, 400});
  // drift vanishes exactly at the center
  auto d = gw_rhs(m.net, {6.0, 4.0});
  CHECK(std::abs(d[0]) <= 1e-14);
  CHECK(std::abs(d[1]) <= 1e-14);
}

TEST_CASE("wealth ladder channels: boundaries and the no-op rule") {
  ModelSystem m = wealth_kinetic(10, 1, 2, 3.0);
  REQUIRE(m.net.size() == 3);
  // only two legal channels at s_max = 2:
  //   2 w1        -> w0 + w2    (same-class pair)
  //   w2 + w0     -> 2 w1       (transfer 2 -> 0)
  REQUIRE(m.net.reactions.size() == 2);
  std::set<std::vector<Count>> alphas, betas;
  for (const auto& r : m.net.reactions) {
    CHECK(r.rate == doctest::Approx(1.5));  // lambda / 2
    alphas.insert(r.alpha);
    betas.insert(r.beta);
  }
  CHECK(alphas.count({0, 2, 0}) == 1);
  CHECK(alphas.count({1, 0, 1}) == 1);
  CHECK(betas.count({1, 0, 1}) == 1);
  CHECK(betas.count({0, 2, 0}) == 1);
  CHECK(m.n0 == std::vector<Count>{0, 10, 0});
  CHECK_THROWS_AS(wealth_kinetic(10, 5, 4), std::invalid_argument);  // s_bar > s_max
}

TEST_CASE("wealth ladder channel count grows like the full pair table") {
  // s1 in 1..s_max, s2 in 0..s_max-1, minus the s2 = s1 - 1 no-ops
  ModelSystem m = wealth_kinetic(10, 2, 6);
  CHECK(m.net.reactions.size() == 6 * 6 - 6);
}

TEST_CASE("synchronous wealth days conserve coins and allow bankrupt wins") {
  WealthState st = wealth_days_new(6, 2, 77);
  CHECK(st.coins == std::vector<int>(6, 2));
  long long total = 12;
  bool bankrupt_seen = false, recovered = false;
  for (int d = 0; d < 400; ++d) {
    bool had_bankrupt = std::any_of(st.coins.begin(), st.coins.end(),
                                    [](int c) { return c == 0; });
    wealth_day_step(st);
    CHECK(std::accumulate(st.coins.begin(), st.coins.end(), 0LL) == total);
    for (int c : st.coins) CHECK(c >= 0);
    bool has_bankrupt = std::any_of(st.coins.begin(), st.coins.end(),
                                    [](int c) { return c == 0; });
    bankrupt_seen = bankrupt_seen || has_bankrupt;
    recovered = recovered || (had_bankrupt && !has_bankrupt);
  }
  CHECK(st.day == 400);
  CHECK(bankrupt_seen);
  CHECK(recovered);  // a zero-coin agent can win the pot and return
  CHECK_THROWS_AS(wealth_days_new(5, 2, 1), std::invalid_argument);  // odd N
}

TEST_CASE("coin histogram") {
  CHECK(coin_histogram({0, 0, 3, 1, 3}) ==
        std::vector<long long>{2, 1, 0, 2});
  CHECK(coin_histogram({}) == std::vector<long long>{});
}

TEST_CASE("majority kernel: closed form and sampled frequencies") {
  CHECK(majority_p_up(9, 6) == doctest::Approx(3.0 * 6 * 5 * 3 / (9.0 * 8 * 7)));
  CHECK(majority_p_down(9, 6) == doctest::Approx(3.0 * 3 * 2 * 6 / (9.0 * 8 * 7)));
  CHECK(majority_p_up(9, 0) == 0.0);
  CHECK(majority_p_down(9, 9) == 0.0);
  // N=5, k=2: up 0.3, down 0.6, stay 0.1
  Rng rng(2024);
  int up = 0, down = 0;
  const int draws = 3000;
  for (int i = 0; i < draws; ++i) {
    int k2 = majority_step(5, 2, rng);
    up += (k2 == 3) ? 1 : 0;
    down += (k2 == 1) ? 1 : 0;
  }
  CHECK(std::abs(up - 0.3 * draws) <= 4.0 * std::sqrt(0.3 * 0.7 * draws));
  CHECK(std::abs(down - 0.6 * draws) <= 4.0 * std::sqrt(0.6 * 0.4 * draws));
}

TEST_CASE("three agents with a 2:1 split settle in one update") {
  Rng rng(5);
  CHECK(majority_step(3, 2, rng) == 3);
  CHECK(majority_step(3, 1, rng) == 0);
  MajorityRun run = majority_run(3, 2, rng);
  CHECK(run.up);
  CHECK(run.steps == 1);
}

TEST_CASE("majority oracle solves the absorbing systems") {
  MajorityOracle o = majority_oracle(9);
  REQUIRE(o.absorb_up.size() == 10);
  CHECK(o.absorb_up[0] == doctest::Approx(0.0));
  CHECK(o.absorb_up[9] == doctest::Approx(1.0));
  CHECK(o.mean_steps[0] == doctest::Approx(0.0));
  CHECK(o.mean_steps[9] == doctest::Approx(0.0));
  // symmetry of the dynamics: u(k) + u(N-k) = 1, m(k) = m(N-k)
  for (int k = 0; k <= 9; ++k) {
    CHECK(o.absorb_up[k] == doctest::Approx(1.0 - o.absorb_up[9 - k]).epsilon(1e-10));
    CHECK(o.mean_steps[k] == doctest::Approx(o.mean_steps[9 - k]).epsilon(1e-10));
  }
  // one-step consistency at an interior state:
  //   u(k) = p_up u(k+1) + p_down u(k-1) + p_stay u(k)
  for (int k = 1; k <= 8; ++k) {
    double pu = majority_p_up(9, k), pd = majority_p_down(9, k);
    double lhs = o.absorb_up[k];
    double rhs = pu * o.absorb_up[k + 1] + pd * o.absorb_up[k - 1] +
                 (1.0 - pu - pd) * o.absorb_up[k];
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    double ms = pu * o.mean_steps[k + 1] + pd * o.mean_steps[k - 1] +
                (1.0 - pu - pd) * o.mean_steps[k] + 1.0;
    CHECK(o.mean_steps[k] == doctest::Approx(ms).epsilon(1e-10));
  }
}

TEST_CASE("ring: no marks means a frozen imbalance") {
  KacRingState st = kac_ring_new(100, 0.0, 0.0, KacMarks::iid_bernoulli, 3);
  for (int t = 0; t < 10; ++t) {
    kac_ring_step(st);
    CHECK(kac_ring_stat(st) == 1.0);
  }
}

TEST_CASE("ring: a fixed mark set is 2n-periodic") {
  KacRingState st = kac_ring_new(50, 11, 0.0, KacMarks::fixed_count, 8);
  long long marked = 0;
  for (auto m : st.marked) marked += m;
  CHECK(marked == 11);
  auto init = st.colors;
  bool changed = false;
  for (int t = 0; t < 100; ++t) {
    kac_ring_step(st);
    if (t == 49) changed = (st.colors != init);
  }
  CHECK(changed);            // the half-period state differs
  CHECK(st.colors == init);  // two full turns restore everything
}

TEST_CASE("ring: parameter validation") {
  CHECK_THROWS_AS(kac_ring_new(10, 5, 0.0, KacMarks::fixed_count, 1),
                  std::invalid_argument);  // needs 2m < n
  CHECK_THROWS_AS(kac_ring_new(10, 0.5, 0.0, KacMarks::iid_bernoulli, 1),
                  std::invalid_argument);  // mu < 1/2
  CHECK_THROWS_AS(kac_ring_new(10, 0.1, 0.5, KacMarks::iid_bernoulli, 1),
                  std::invalid_argument);  // p < 1/2
  CHECK_THROWS_AS(kac_ring_new(10, 2.5, 0.0, KacMarks::fixed_count, 1),
                  std::invalid_argument);  // m must be integral
}

TEST_CASE("cubic birth-death: channel intensities at the reference state") {
  ReactionNetwork net = schlogl_network();
  REQUIRE(net.size() == 1);
  REQUIRE(net.reactions.size() == 4);
  const Count n = 10, j = 5;
  auto a = propensities(net, {j}, n);
  double birth = 0.0, death = 0.0;
  for (std::size_t r = 0; r < net.reactions.size(); ++r) {
    double delta = static_cast<double>(net.reactions[r].beta[0] -
                                       net.reactions[r].alpha[0]);
    (delta > 0 ? birth : death) += a[r];
  }
  CHECK(birth == doctest::Approx(10.0 + 3.0 * 5 * 4 / 10.0).epsilon(1e-12));
  CHECK(death == doctest::Approx(3.0 * 5 + 5.0 * 4 * 3 / 100.0).epsilon(1e-12));
  // at j = 0 only the inflow channel is live
  auto z = propensities(net, {0}, n);
  double total = 0.0;
  for (double v : z) total += v;
  CHECK(total == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
}

TEST_CASE("critical-window rescaling of a synthetic trajectory") {
  const Count n = 10000;  // sqrt(n) = 100, n^(3/4) = 1000
  Trajectory tr;
  tr.samples = {{0.0, {n}}, {50.0, {n + 1000}}, {100.0, {n - 2000}}};
  auto scaled = schlogl_scaled(tr, n);
  REQUIRE(scaled.size() == 3);
  CHECK(scaled[0].t == doctest::Approx(0.0));
  CHECK(scaled[0].x == doctest::Approx(0.0));
  CHECK(scaled[1].t == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(scaled[1].x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(scaled[2].t == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(scaled[2].x == doctest::Approx(-2.0).epsilon(1e-12));
  // cutting at T keeps the prefix; an unreachable T throws
  CHECK(schlogl_scaled(tr, n, 0.5).size() == 2);
  CHECK_THROWS_AS(schlogl_scaled(tr, n, 2.0), std::invalid_argument);
}

TEST_CASE("cubic birth-death runner stays on the density scale") {
  SimConfig cfg;
  cfg.horizon = 5.0;
  cfg.sample_dt = 1.0;
  cfg.seed = 17;
  Trajectory tr = schlogl_process(400, 400, cfg);
  CHECK(tr.jump_count > 0);
  for (const auto& s : tr.samples) {
    CHECK(s.counts[0] > 200);  // the walk stays near n at this horizon
    CHECK(s.counts[0] < 800);
  }
}

TEST_CASE("growth process invariants and the deterministic alpha=1 path") {
  YuleState st = yule_new(1.0, 10);
  REQUIRE(st.coin_counts.size() == 1);
  CHECK(st.coin_counts[0] == 1);
  yule_step(st);  // day 2: bonus must go to the single old resident
  REQUIRE(st.coin_counts.size() == 2);
  CHECK(st.coin_counts[0] == 2);
  CHECK(st.coin_counts[1] == 1);
  // k days in: k residents, 2k-1 coins, owner table consistent
  YuleState st2 = yule_new(0.3, 11);
  for (int d = 0; d < 500; ++d) yule_step(st2);
  CHECK(st2.coin_counts.size() == 501);
  long long coins = 0;
  for (long long c : st2.coin_counts) {
    CHECK(c >= 1);
    coins += c;
  }
  CHECK(coins == 2 * 501 - 1);
  CHECK(st2.owner.size() == static_cast<std::size_t>(coins));
  std::vector<long long> recount(st2.coin_counts.size(), 0);
  for (int o : st2.owner) recount[static_cast<std::size_t>(o)] += 1;
  CHECK(recount == st2.coin_counts);
  CHECK_THROWS_AS(yule_new(1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(yule_new(-0.1, 1), std::invalid_argument);
}

TEST_CASE("growth histogram counts holders by coin number") {
  auto hist = yule_run(0.0, 200, 5);
  long long residents = 0, coins = 0;
  for (std::size_t s = 0; s < hist.size(); ++s) {
    residents += hist[s];
    coins += static_cast<long long>(s) * hist[s];
  }
  CHECK(hist[0] == 0);  // nobody holds zero coins
  CHECK(residents == 200);  // one arrival per day from day 1
  CHECK(coins == 2 * 200 - 1);
}

TEST_CASE("random-text ranking: determinism, order, and content") {
  auto table = monkey_text(3, 20000, 99);
  auto again = monkey_text(3, 20000, 99);
  REQUIRE(table.size() == again.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    CHECK(table[r].word == again[r].word);
    CHECK(table[r].count == again[r].count);
  }
  for (std::size_t r = 1; r < table.size(); ++r) {
    bool ordered = table[r - 1].count > table[r].count ||
                   (table[r - 1].count == table[r].count &&
                    table[r - 1].word < table[r].word);
    CHECK(ordered);
  }
  for (const auto& e : table) {
    CHECK(!e.word.empty());
    CHECK(e.count >= 1);
    for (char ch : e.word) {
      bool in_alphabet = ch == 'a' || ch == 'b' || ch == 'c';
      CHECK(in_alphabet);
    }
  }
  CHECK_THROWS_AS(monkey_text(1, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS(monkey_text(53, 100, 1), std::invalid_argument);
}

TEST_CASE("single-letter words appear at matched frequencies") {
  auto table = monkey_text(2, 400000, 123);
  long long ca = 0, cb = 0;
  for (const auto& e : table) {
    if (e.word == "a") ca = e.count;
    if (e.word == "b") cb = e.count;
  }
  REQUIRE(ca > 0);
  REQUIRE(cb > 0);
  // both letters are equally likely; counts differ by sampling noise only
  double diff = static_cast<double>(ca - cb);
  double sigma = std::sqrt(static_cast<double>(ca + cb));
  CHECK(std::abs(diff) <= 5.0 * sigma);
}

TEST_CASE("rank-frequency parameters of the uniform text model") {
  ZipfParams z = zipf_mandelbrot_params(26);
  CHECK(z.alpha == doctest::Approx(std::log(27.0) / std::log(26.0)).epsilon(1e-15));
  CHECK(z.B == doctest::Approx(26.0 / 25.0).epsilon(1e-15));
  CHECK(z.C == doctest::Approx(std::pow(26.0, z.alpha - 1.0) /
                               std::pow(25.0, z.alpha))
                   .epsilon(1e-12));
  ZipfParams z4 = zipf_mandelbrot_params(4);
  CHECK(z4.alpha == doctest::Approx(std::log(5.0) / std::log(4.0)).epsilon(1e-15));
  CHECK(z4.B == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("surfer generator validation and stationary vector") {
  auto rates = pagerank_demo_rates();
  REQUIRE(rates.size() == 5);
  auto p = pagerank_stationary(rates);
  REQUIRE(p.size() == 5);
  double sum = 0.0;
  for (double v : p) {
    CHECK(v > 0.0);
    sum += v;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  // independent balance check: inflow equals outflow at every node
  for (std::size_t j = 0; j < 5; ++j) {
    double in = 0.0, out = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      if (i == j) continue;
      in += p[i] * rates[i][j];
      out += p[j] * rates[j][i];
    }
    CHECK(in == doctest::Approx(out).epsilon(1e-10));
  }
  // broken row sum
  auto bad = rates;
  bad[0][0] = 1.0;
  CHECK_THROWS_AS(pagerank_stationary(bad), std::invalid_argument);
  // disconnected graph
  std::vector<std::vector<double>> split = {
      {-1.0, 1.0, 0.0, 0.0},
      {1.0, -1.0, 0.0, 0.0},
      {0.0, 0.0, -1.0, 1.0},
      {0.0, 0.0, 1.0, -1.0},
  };
  CHECK_THROWS_AS(pagerank_stationary(split), std::invalid_argument);
  // the unary hop network carries one walker conservation law
  ModelSystem sys = pagerank_surfers(rates, 7);
  CHECK(sys.n0 == std::vector<Count>{7, 0, 0, 0, 0});
  CHECK(conservation_laws(sys.net).vectors ==
        std::vector<std::vector<Count>>{{1, 1, 1, 1, 1}});
}

TEST_CASE("model registry lists every built-in") {
  auto names = model_names();
  for (const char* want :
       {"ehrenfest", "schlogl", "lotka_volterra", "wealth_days",
        "wealth_kinetic", "majority", "pagerank", "kac_ring", "yule", "monkey"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
}
