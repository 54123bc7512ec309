#include <cmath>

#include "doctest.h"
#include "macrokin/meanfield.hpp"
#include "macrokin/models.hpp"
#include "macrokin/network.hpp"

using namespace macrokin;

namespace {

double urn_sup_error(double dt) {
  ModelSystem m = ehrenfest(10, 1.0);
  OdeConfig cfg;
  cfg.T = 5.0;
  cfg.step_dt = dt;
  OdeResult r = integrate(m.net, {1.0, 0.0}, cfg);
  double sup = 0.0;
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    double exact = 0.5 + 0.5 * std::exp(-2.0 * r.times[k]);
    sup = std::max(sup, std::abs(r.states[k][0] - exact));
  }
  return sup;
}

}  // namespace

TEST_CASE("two-urn relaxation matches the analytic exponential") {
  CHECK(urn_sup_error(1e-3) <= 1e-8);
}

TEST_CASE("halving the step shrinks the error at fourth order") {
  double coarse = urn_sup_error(0.05);
  double fine = urn_sup_error(0.025);
  CHECK(coarse > 0.0);
  CHECK(fine > 0.0);
  CHECK(coarse / fine >= 8.0);  // theoretical factor 16
}

TEST_CASE("drift field: closed forms on small networks") {
  // one-species cubic: rhs collapses to -(c-1)^3
  ReactionNetwork net = schlogl_network();
  for (double c : {0.2, 0.7, 1.0, 1.5, 2.0}) {
    auto d = gw_rhs(net, {c});
    CHECK(d[0] == doctest::Approx(-std::pow(c - 1.0, 3)).epsilon(1e-12));
  }
  // two-urn: lambda * (c2 - c1, c1 - c2)
  ModelSystem m = ehrenfest(10, 1.5);
  auto d = gw_rhs(m.net, {0.8, 0.2});
  CHECK(d[0] == doctest::Approx(1.5 * (0.2 - 0.8)).epsilon(1e-14));
  CHECK(d[1] == doctest::Approx(1.5 * (0.8 - 0.2)).epsilon(1e-14));
  // the balanced point is a fixed point
  auto z = gw_rhs(m.net, {0.5, 0.5});
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);
}

TEST_CASE("conserved combinations annihilate the drift") {
  ReactionNetwork net = wealth_kinetic(10, 5, 8).net;
  ConservationBasis basis = conservation_laws(net);
  REQUIRE(basis.dimension() == 2);
  std::vector<double> c(net.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = 0.05 + 0.11 * static_cast<double>((i * 7) % 5);
  auto d = gw_rhs(net, c);
  for (const auto& mu : basis.vectors) {
    double dot = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      dot += static_cast<double>(mu[i]) * d[i];
      scale += std::abs(static_cast<double>(mu[i]) * d[i]);
    }
    CHECK(std::abs(dot) <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("predator-prey invariant is preserved by the integrator") {
  const double mu3 = 1.0, mu6 = 2.0, K = 1.0;
  ModelSystem sys = lotka_volterra(mu3, mu6, K, 100);
  std::vector<double> c0 = {lv_center_prey(mu3, mu6, K) * 1.2,
                            lv_center_pred(mu3, mu6, K)};
  OdeConfig cfg;
  cfg.T = 5.0;
  cfg.step_dt = 1e-3;
  OdeResult r = integrate(sys.net, c0, cfg);
  double v0 = lv_first_integral(c0[0], c0[1], mu3, mu6, K);
  for (const auto& c : r.states) {
    double v = lv_first_integral(c[0], c[1], mu3, mu6, K);
    CHECK(std::abs(v - v0) <= 1e-6 * std::abs(v0));
  }
}

TEST_CASE("relative entropy: pinned values and edge handling") {
  CHECK(lyapunov_kl({1.0, 0.0}, {0.5, 0.5}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(lyapunov_kl({0.5, 0.5}, {0.5, 0.5}) == 0.0);
  CHECK(lyapunov_kl({0.6, 0.4}, {0.5, 0.5}) ==
        doctest::Approx(0.020135513550688858).epsilon(1e-12));
  CHECK_THROWS_AS(lyapunov_kl({0.5, 0.5}, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("dense output grid and the exact final row") {
  ModelSystem m = ehrenfest(10, 1.0);
  OdeConfig cfg;
  cfg.T = 1.0;
  cfg.step_dt = 0.3;  // does not divide T
  OdeResult r = integrate(m.net, {1.0, 0.0}, cfg);
  REQUIRE(r.times.size() >= 2);
  CHECK(r.times.front() == 0.0);
  CHECK(r.times.back() == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t k = 1; k < r.times.size(); ++k)
    CHECK(r.times[k] > r.times[k - 1]);
  CHECK(!r.aborted);
}

TEST_CASE("integrator rejects bad configurations") {
  ModelSystem m = ehrenfest(10, 1.0);
  OdeConfig cfg;
  cfg.T = 1.0;
  cfg.step_dt = 0.0;
  CHECK_THROWS_AS(integrate(m.net, {1.0, 0.0}, cfg), std::invalid_argument);
  cfg.step_dt = 0.1;
  cfg.T = 0.0;
  CHECK_THROWS_AS(integrate(m.net, {1.0, 0.0}, cfg), std::invalid_argument);
  cfg.T = 1.0;
  CHECK_THROWS_AS(integrate(m.net, {1.0, 0.0, 0.0}, cfg), std::invalid_argument);
}
