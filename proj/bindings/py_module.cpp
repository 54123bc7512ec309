// Python surface: parsing, simulation, mean-field integration, equilibrium
// analysis, the model gallery, and the fitting helpers. Containers cross the
// boundary as plain lists/dicts so the module needs no numpy.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "macrokin/equilibrium.hpp"
#include "macrokin/meanfield.hpp"
#include "macrokin/models.hpp"
#include "macrokin/network.hpp"
#include "macrokin/rng.hpp"
#include "macrokin/ssa.hpp"
#include "macrokin/stats.hpp"
#include "macrokin/version.hpp"

namespace py = pybind11;
using namespace macrokin;

namespace {

IntensityConvention convention_from(const std::string& name) {
  if (name == "kurtz") return IntensityConvention::kurtz;
  if (name == "paper-literal") return IntensityConvention::paper_literal;
  throw std::invalid_argument("intensity convention must be 'kurtz' or 'paper-literal'");
}

py::dict trajectory_dict(const Trajectory& tr) {
  py::list times, counts;
  for (const auto& s : tr.samples) {
    times.append(s.t);
    counts.append(s.counts);
  }
  py::dict d;
  d["times"] = times;
  d["counts"] = counts;
  d["jump_count"] = tr.jump_count;
  d["seed"] = tr.seed;
  d["truncated"] = tr.truncated;
  d["absorbed"] = tr.absorbed;
  return d;
}

ConservationBasis basis_from(const std::vector<std::vector<Count>>& rows) {
  ConservationBasis b;
  b.vectors = rows;
  return b;
}

py::dict fit_dict(const FitReport& f) {
  py::dict d;
  d["model"] = f.model;
  d["parameter"] = f.parameter;
  d["fit_min"] = f.fit_min;
  d["fit_max"] = f.fit_max;
  d["residual"] = f.residual;
  d["points"] = f.points;
  return d;
}

}  // namespace

PYBIND11_MODULE(macrokin, m) {
  m.doc() = "stochastic and mean-field mass-action kinetics";
  m.attr("__version__") = MACROKIN_VERSION;

  py::class_<Reaction>(m, "Reaction")
      .def_readonly("alpha", &Reaction::alpha)
      .def_readonly("beta", &Reaction::beta)
      .def_readonly("rate", &Reaction::rate);

  py::class_<ReactionNetwork>(m, "ReactionNetwork")
      .def_readonly("species", &ReactionNetwork::species)
      .def_readonly("reactions", &ReactionNetwork::reactions)
      .def("__len__", &ReactionNetwork::size)
      .def("species_index", &ReactionNetwork::species_index);

  py::class_<ModelSystem>(m, "ModelSystem")
      .def_readonly("net", &ModelSystem::net)
      .def_readonly("n0", &ModelSystem::n0)
      .def_readonly("N", &ModelSystem::N);

  // --- network ---
  m.def("parse_network", &parse_network, py::arg("text"));
  m.def("format_network", &format_network, py::arg("net"));
  m.def("validate_network", &validate_network, py::arg("net"));
  m.def(
      "conservation_laws",
      [](const ReactionNetwork& net) { return conservation_laws(net).vectors; },
      py::arg("net"));
  m.def(
      "invariant_values",
      [](const ReactionNetwork& net, const std::vector<Count>& n) {
        return invariant_values(conservation_laws(net), n);
      },
      py::arg("net"), py::arg("n"));

  // --- jump process ---
  m.def(
      "propensities",
      [](const ReactionNetwork& net, const std::vector<Count>& n, Count N,
         const std::string& convention) {
        return propensities(net, n, N, convention_from(convention));
      },
      py::arg("net"), py::arg("n"), py::arg("N"),
      py::arg("convention") = "kurtz");
  m.def(
      "simulate",
      [](const ReactionNetwork& net, const std::vector<Count>& n0, Count N,
         double horizon, double sample_dt, uint64_t seed, long long max_events,
         const std::string& convention) {
        SimConfig cfg;
        cfg.horizon = horizon;
        cfg.sample_dt = sample_dt;
        cfg.seed = seed;
        cfg.max_events = max_events;
        cfg.convention = convention_from(convention);
        return trajectory_dict(simulate(net, n0, N, cfg));
      },
      py::arg("net"), py::arg("n0"), py::arg("N"), py::arg("horizon"),
      py::arg("sample_dt"), py::arg("seed"),
      py::arg("max_events") = 1'000'000'000LL, py::arg("convention") = "kurtz");
  m.def(
      "ensemble",
      [](const ReactionNetwork& net, const std::vector<Count>& n0, Count N,
         double horizon, double sample_dt, uint64_t seed, int replicas,
         long long max_events, const std::string& convention) {
        SimConfig cfg;
        cfg.horizon = horizon;
        cfg.sample_dt = sample_dt;
        cfg.seed = seed;
        cfg.max_events = max_events;
        cfg.convention = convention_from(convention);
        py::list out;
        for (const auto& tr : ensemble(net, n0, N, cfg, replicas))
          out.append(trajectory_dict(tr));
        return out;
      },
      py::arg("net"), py::arg("n0"), py::arg("N"), py::arg("horizon"),
      py::arg("sample_dt"), py::arg("seed"), py::arg("replicas"),
      py::arg("max_events") = 1'000'000'000LL, py::arg("convention") = "kurtz");
  m.def("split_seed", &split_seed, py::arg("seed"), py::arg("index"));

  // --- mean field ---
  m.def("gw_rhs", &gw_rhs, py::arg("net"), py::arg("c"));
  m.def(
      "integrate",
      [](const ReactionNetwork& net, const std::vector<double>& c0, double T,
         double step_dt) {
        OdeConfig cfg;
        cfg.T = T;
        cfg.step_dt = step_dt;
        OdeResult r = integrate(net, c0, cfg);
        py::dict d;
        d["times"] = r.times;
        d["states"] = r.states;
        d["clamped"] = r.clamped;
        d["aborted"] = r.aborted;
        return d;
      },
      py::arg("net"), py::arg("c0"), py::arg("T"), py::arg("step_dt") = 1e-3);
  m.def("lyapunov_kl", &lyapunov_kl, py::arg("c"), py::arg("xi"));

  // --- equilibrium ---
  m.def(
      "solve_unitarity",
      [](const ReactionNetwork& net) {
        UnitarityResult u = solve_unitarity(net);
        py::dict d;
        d["feasible"] = u.feasible;
        d["xi"] = u.xi;
        d["residual"] = u.residual;
        d["normalized"] = u.normalized;
        return d;
      },
      py::arg("net"));
  m.def(
      "check_detailed_balance",
      [](const ReactionNetwork& net, const std::vector<double>& xi) {
        return check_detailed_balance(net, xi).holds;
      },
      py::arg("net"), py::arg("xi"));
  m.def(
      "entropy_project",
      [](const std::vector<double>& xi,
         const std::vector<std::vector<Count>>& basis,
         const std::vector<double>& b) {
        ProjectionResult p = entropy_project(xi, basis_from(basis), b);
        py::dict d;
        d["converged"] = p.converged;
        d["c"] = p.c;
        d["kl"] = p.kl;
        d["defect"] = p.defect;
        return d;
      },
      py::arg("xi"), py::arg("basis"), py::arg("b"));
  m.def(
      "exact_chain",
      [](const ReactionNetwork& net, const std::vector<Count>& n0, Count N,
         long long max_states) {
        ExactChain c = exact_chain(net, n0, N, max_states);
        py::dict d;
        d["states"] = c.states;
        d["stationary"] = c.stationary;
        d["exit_rate"] = c.exit_rate;
        d["reducible"] = c.reducible;
        d["closed_classes"] = c.closed_classes;
        return d;
      },
      py::arg("net"), py::arg("n0"), py::arg("N"),
      py::arg("max_states") = 200000LL);
  m.def(
      "mean_return_time",
      [](const ReactionNetwork& net, const std::vector<Count>& n0, Count N,
         const std::vector<Count>& target, long long max_states) {
        ExactChain c = exact_chain(net, n0, N, max_states);
        int s = c.index_of(target);
        if (s < 0) throw std::invalid_argument("target state is not reachable");
        ReturnTime rt = mean_return_time(c, s);
        ReturnTime fp = mean_return_time_fp(c, s);
        py::dict d;
        d["continuous"] = rt.continuous;
        d["jump_steps"] = rt.jump_steps;
        d["continuous_fp"] = fp.continuous;
        d["jump_steps_fp"] = fp.jump_steps;
        return d;
      },
      py::arg("net"), py::arg("n0"), py::arg("N"), py::arg("target"),
      py::arg("max_states") = 200000LL);
  m.def(
      "tv_mixing",
      [](const ReactionNetwork& net, const std::vector<Count>& n0, Count N,
         double eps, double grid_dt, double t_max, long long max_states) {
        ExactChain c = exact_chain(net, n0, N, max_states);
        std::vector<double> p0(c.states.size(), 0.0);
        int s = c.index_of(n0);
        p0[static_cast<std::size_t>(s)] = 1.0;
        return tv_mixing(c, p0, eps, grid_dt, t_max);
      },
      py::arg("net"), py::arg("n0"), py::arg("N"), py::arg("eps"),
      py::arg("grid_dt"), py::arg("t_max"), py::arg("max_states") = 200000LL);
  m.def(
      "product_form_stationary",
      [](const ReactionNetwork& net, const std::vector<Count>& n0, Count N,
         const std::vector<double>& xi, long long max_states) {
        ExactChain c = exact_chain(net, n0, N, max_states);
        py::dict d;
        d["states"] = c.states;
        d["pi"] = product_form_stationary(c.states, xi, N);
        return d;
      },
      py::arg("net"), py::arg("n0"), py::arg("N"), py::arg("xi"),
      py::arg("max_states") = 200000LL);

  // --- model gallery ---
  m.def("ehrenfest", &ehrenfest, py::arg("N"), py::arg("lam"));
  m.def("lotka_volterra", &lotka_volterra, py::arg("mu3"), py::arg("mu6"),
        py::arg("K"), py::arg("N"));
  m.def("wealth_kinetic", &wealth_kinetic, py::arg("N"), py::arg("s_bar"),
        py::arg("s_max"), py::arg("lam") = 1.0);
  m.def("pagerank_surfers", &pagerank_surfers, py::arg("rates"), py::arg("N"));
  m.def("pagerank_stationary", &pagerank_stationary, py::arg("rates"));
  m.def("pagerank_demo_rates", &pagerank_demo_rates);
  m.def("schlogl_network", &schlogl_network);
  m.def(
      "yule_run",
      [](double alpha, long long days, uint64_t seed) {
        return yule_run(alpha, days, seed);
      },
      py::arg("alpha"), py::arg("days"), py::arg("seed"));
  m.def(
      "monkey_text",
      [](int n_symbols, long long length, uint64_t seed) {
        py::list out;
        for (const auto& e : monkey_text(n_symbols, length, seed))
          out.append(py::make_tuple(e.word, e.count));
        return out;
      },
      py::arg("n_symbols"), py::arg("length"), py::arg("seed"));
  m.def(
      "zipf_mandelbrot_params",
      [](int n_symbols) {
        ZipfParams z = zipf_mandelbrot_params(n_symbols);
        py::dict d;
        d["alpha"] = z.alpha;
        d["B"] = z.B;
        d["C"] = z.C;
        return d;
      },
      py::arg("n_symbols"));
  m.def(
      "majority_oracle",
      [](int N) {
        MajorityOracle o = majority_oracle(N);
        py::dict d;
        d["absorb_up"] = o.absorb_up;
        d["mean_steps"] = o.mean_steps;
        return d;
      },
      py::arg("N"));
  m.def(
      "majority_run",
      [](int N, int k0, uint64_t seed, long long max_steps) {
        Rng rng(seed);
        MajorityRun r = majority_run(N, k0, rng, max_steps);
        py::dict d;
        d["up"] = r.up;
        d["steps"] = r.steps;
        return d;
      },
      py::arg("N"), py::arg("k0"), py::arg("seed"),
      py::arg("max_steps") = 1'000'000'000LL);
  m.def(
      "kac_ring",
      [](long long n, double m_or_mu, double p, long long steps, uint64_t seed,
         const std::string& mode) {
        KacMarks marks;
        if (mode == "fixed_count")
          marks = KacMarks::fixed_count;
        else if (mode == "iid_bernoulli")
          marks = KacMarks::iid_bernoulli;
        else
          throw std::invalid_argument("mode must be fixed_count or iid_bernoulli");
        KacRingState st = kac_ring_new(n, m_or_mu, p, marks, seed);
        std::vector<double> stats;
        stats.reserve(static_cast<std::size_t>(steps) + 1);
        stats.push_back(kac_ring_stat(st));
        for (long long t = 0; t < steps; ++t) {
          kac_ring_step(st);
          stats.push_back(kac_ring_stat(st));
        }
        return stats;
      },
      py::arg("n"), py::arg("m_or_mu"), py::arg("p"), py::arg("steps"),
      py::arg("seed"), py::arg("mode") = "iid_bernoulli");
  m.def(
      "wealth_day_histogram",
      [](int N, int s_bar, long long days, long long burn, uint64_t seed) {
        WealthState st = wealth_days_new(N, s_bar, seed);
        for (long long d = 0; d < burn; ++d) wealth_day_step(st);
        std::vector<double> acc;
        for (long long d = 0; d < days; ++d) {
          wealth_day_step(st);
          auto h = coin_histogram(st.coins);
          if (h.size() > acc.size()) acc.resize(h.size(), 0.0);
          for (std::size_t s = 0; s < h.size(); ++s)
            acc[s] += static_cast<double>(h[s]);
        }
        for (double& v : acc) v /= static_cast<double>(days);
        return acc;
      },
      py::arg("N"), py::arg("s_bar"), py::arg("days"), py::arg("burn"),
      py::arg("seed"));
  m.def("model_names", &model_names);

  // --- stats ---
  m.def("concentration_threshold", &concentration_threshold, py::arg("N"),
        py::arg("sigma"));
  m.def(
      "fit_exponential",
      [](const std::vector<double>& hist, double min_count) {
        return fit_dict(fit_exponential(hist, min_count));
      },
      py::arg("hist"), py::arg("min_count") = 5.0);
  m.def(
      "fit_power_law",
      [](const std::vector<std::pair<double, double>>& xy, int drop_head,
         double min_value) {
        return fit_dict(fit_power_law(xy, drop_head, min_value));
      },
      py::arg("xy"), py::arg("drop_head") = 5, py::arg("min_value") = 10.0);
}
