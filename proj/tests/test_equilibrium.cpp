#include <cmath>

#include "doctest.h"
#include "macrokin/equilibrium.hpp"
#include "macrokin/meanfield.hpp"
#include "macrokin/models.hpp"
#include "macrokin/network.hpp"

using namespace macrokin;

TEST_CASE("balance point of the two-urn pair is (1/2, 1/2)") {
  UnitarityResult u = solve_unitarity(ehrenfest(10, 1.0).net);
  REQUIRE(u.feasible);
  CHECK(u.normalized);
  CHECK(u.xi[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(u.xi[1] == doctest::Approx(0.5).epsilon(1e-12));
  DetailedBalanceReport db = check_detailed_balance(ehrenfest(10, 1.0).net, u.xi);
  CHECK(db.holds);
}

TEST_CASE("open birth-death pins the absolute level k1/k2") {
  ReactionNetwork net = parse_network("0 -> A @ 3\nA -> 0 @ 1.5\n");
  UnitarityResult u = solve_unitarity(net);
  REQUIRE(u.feasible);
  CHECK(!u.normalized);  // no conservation law frees the scale
  CHECK(u.xi[0] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("a one-way cycle balances complexes without detailed balance") {
  ReactionNetwork net = parse_network("A -> B @ 1\nB -> C @ 1\nC -> A @ 1\n");
  UnitarityResult u = solve_unitarity(net);
  REQUIRE(u.feasible);
  for (double x : u.xi) CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  DetailedBalanceReport db = check_detailed_balance(net, u.xi);
  CHECK(!db.holds);
}

TEST_CASE("predator-prey admits no positive balance point") {
  UnitarityResult u = solve_unitarity(lotka_volterra(1, 1, 1, 10).net);
  CHECK(!u.feasible);
  CHECK(u.residual > 1e-6);
}

TEST_CASE("projection onto the simplex slice") {
  ConservationBasis basis;
  basis.vectors = {{1, 1}};
  // proportional target: the projection just normalizes xi
  ProjectionResult p = entropy_project({0.25, 0.75}, basis, {1.0});
  REQUIRE(p.converged);
  CHECK(p.c[0] == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(p.c[1] == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(p.defect <= 1e-10);
  CHECK(p.kl == doctest::Approx(lyapunov_kl(p.c, {0.25, 0.75})).epsilon(1e-12));
  // doubling the slice level scales the point
  ProjectionResult q = entropy_project({0.25, 0.75}, basis, {2.0});
  REQUIRE(q.converged);
  CHECK(q.c[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(q.c[1] == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("projection is blind to the representative balance point") {
  ReactionNetwork net = wealth_kinetic(10, 1, 4).net;
  ConservationBasis basis = conservation_laws(net);
  UnitarityResult u = solve_unitarity(net);
  REQUIRE(u.feasible);
  std::vector<double> b(basis.dimension());
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < net.size(); ++i)
      s += static_cast<double>(basis.vectors[k][i]) / static_cast<double>(net.size());
    b[k] = s;
  }
  std::vector<double> xi2 = u.xi;
  for (std::size_t i = 0; i < xi2.size(); ++i)
    xi2[i] *= std::exp(0.4 * static_cast<double>(basis.vectors[0][i]) -
                       0.1 * static_cast<double>(basis.vectors[1][i]));
  ProjectionResult p1 = entropy_project(u.xi, basis, b);
  ProjectionResult p2 = entropy_project(xi2, basis, b);
  REQUIRE(p1.converged);
  REQUIRE(p2.converged);
  for (std::size_t i = 0; i < p1.c.size(); ++i)
    CHECK(p1.c[i] == doctest::Approx(p2.c[i]).epsilon(1e-9));
}

TEST_CASE("exact chain on the two-urn pair at N=2") {
  ModelSystem m = ehrenfest(2, 1.0);
  ExactChain chain = exact_chain(m.net, m.n0, m.N);
  REQUIRE(chain.states.size() == 3);
  CHECK(!chain.reducible);
  CHECK(chain.closed_classes == 1);
  int full = chain.index_of({2, 0});
  int half = chain.index_of({1, 1});
  int none = chain.index_of({0, 2});
  REQUIRE(full >= 0);
  REQUIRE(half >= 0);
  REQUIRE(none >= 0);
  CHECK(chain.stationary[full] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(chain.stationary[half] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(chain.stationary[none] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(chain.exit_rate[full] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(chain.exit_rate[half] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(chain.index_of({3, -1}) == -1);
}

TEST_CASE("two-urn stationary law at N=12 is binomial") {
  ModelSystem m = ehrenfest(12, 1.0);
  ExactChain chain = exact_chain(m.net, m.n0, m.N);
  REQUIRE(chain.states.size() == 13);
  for (std::size_t s = 0; s < chain.states.size(); ++s) {
    double c = 1.0;
    for (Count j = 0; j < chain.states[s][0]; ++j)
      c *= static_cast<double>(12 - j) / static_cast<double>(j + 1);
    CHECK(std::abs(chain.stationary[s] - c * std::pow(0.5, 12)) <= 1e-10);
  }
}

TEST_CASE("pure decay chain is reducible with a point-mass stationary law") {
  ReactionNetwork net = parse_network("A -> 0 @ 1\n");
  ExactChain chain = exact_chain(net, {3}, 3);
  REQUIRE(chain.states.size() == 4);
  CHECK(chain.reducible);
  int zero = chain.index_of({0});
  REQUIRE(zero >= 0);
  CHECK(chain.stationary[zero] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t s = 0; s < chain.states.size(); ++s)
    if (static_cast<int>(s) != zero) CHECK(chain.stationary[s] == 0.0);
}

TEST_CASE("mean recurrence of the full urn by two independent routes") {
  ModelSystem m = ehrenfest(10, 1.0);
  ExactChain chain = exact_chain(m.net, m.n0, m.N);
  int s = chain.index_of(m.n0);
  REQUIRE(s >= 0);
  ReturnTime a = mean_return_time(chain, s);
  ReturnTime b = mean_return_time_fp(chain, s);
  CHECK(a.jump_steps == doctest::Approx(1024.0).epsilon(1e-8));
  CHECK(b.jump_steps == doctest::Approx(1024.0).epsilon(1e-8));
  // continuous route: 1/(pi_s q_s) with q_s = N*lambda = 10
  CHECK(a.continuous == doctest::Approx(102.4).epsilon(1e-8));
  CHECK(b.continuous == doctest::Approx(a.continuous).epsilon(1e-8));
}

TEST_CASE("the two return-time routes agree off the reversible world") {
  ModelSystem sys = pagerank_surfers(pagerank_demo_rates(), 3);
  ExactChain chain = exact_chain(sys.net, sys.n0, sys.N);
  int s = chain.index_of(sys.n0);
  REQUIRE(s >= 0);
  ReturnTime a = mean_return_time(chain, s);
  ReturnTime b = mean_return_time_fp(chain, s);
  CHECK(a.continuous == doctest::Approx(b.continuous).epsilon(1e-8));
  CHECK(a.jump_steps == doctest::Approx(b.jump_steps).epsilon(1e-8));
}

TEST_CASE("mixing time of a two-state chain against the closed form") {
  ReactionNetwork net = parse_network("A -> B @ 1\nB -> A @ 2\n");
  ExactChain chain = exact_chain(net, {1, 0}, 1);
  REQUIRE(chain.states.size() == 2);
  int start = chain.index_of({1, 0});
  std::vector<double> p0(2, 0.0);
  p0[static_cast<std::size_t>(start)] = 1.0;
  // TV(t) = (1/3) e^{-3t}; first grid time with TV <= eps
  double eps = 0.01;
  double t = tv_mixing(chain, p0, eps, 0.001, 10.0);
  double exact = std::log((1.0 / 3.0) / eps) / 3.0;
  CHECK(t >= exact - 1e-9);
  CHECK(t <= exact + 0.001 + 1e-9);
  CHECK_THROWS_AS(tv_mixing(chain, p0, 1e-9, 0.5, 1.0), std::runtime_error);
}

TEST_CASE("product-form law matches the exact solve on a feasible ladder") {
  ModelSystem sys = wealth_kinetic(4, 1, 3);
  UnitarityResult u = solve_unitarity(sys.net);
  REQUIRE(u.feasible);
  ExactChain chain = exact_chain(sys.net, sys.n0, sys.N);
  std::vector<double> pf = product_form_stationary(chain.states, u.xi, sys.N);
  REQUIRE(pf.size() == chain.stationary.size());
  for (std::size_t s = 0; s < pf.size(); ++s)
    CHECK(std::abs(pf[s] - chain.stationary[s]) <= 1e-10);
}

TEST_CASE("state-space cap throws instead of grinding") {
  ModelSystem sys = wealth_kinetic(12, 5, 20);
  CHECK_THROWS_AS(exact_chain(sys.net, sys.n0, sys.N, 50), std::runtime_error);
}
