import math

import macrokin


def test_version():
    assert macrokin.__version__ == "0.1.0"


def test_parse_and_conservation():
    net = macrokin.parse_network("species: A B\nA -> B @ 1\nB -> A @ 1\n")
    assert net.species == ["A", "B"]
    assert len(net) == 2
    laws = macrokin.conservation_laws(net)
    assert laws == [[1, 1]]
    assert macrokin.invariant_values(net, [7, 3]) == [10]


def test_simulate_conserves_and_is_deterministic():
    sys = macrokin.ehrenfest(40, 1.0)
    a = macrokin.simulate(sys.net, sys.n0, sys.N, horizon=5.0, sample_dt=1.0, seed=7)
    b = macrokin.simulate(sys.net, sys.n0, sys.N, horizon=5.0, sample_dt=1.0, seed=7)
    assert a == b
    assert not a["truncated"]
    for counts in a["counts"]:
        assert sum(counts) == 40


def test_ensemble_replica_seeds():
    sys = macrokin.ehrenfest(20, 1.0)
    runs = macrokin.ensemble(sys.net, sys.n0, sys.N, 2.0, 1.0, 11, 4)
    assert len(runs) == 4
    assert [r["seed"] for r in runs] == [macrokin.split_seed(11, i) for i in range(4)]


def test_integrate_urn_relaxation():
    net = macrokin.parse_network("species: A B\nA -> B @ 1\nB -> A @ 1\n")
    out = macrokin.integrate(net, [1.0, 0.0], T=8.0, step_dt=1e-3)
    cA = out["states"][-1][0]
    exact = 0.5 + 0.5 * math.exp(-2.0 * 8.0)
    assert abs(cA - exact) < 1e-6
    assert not out["aborted"]


def test_unitarity_and_projection():
    sys = macrokin.ehrenfest(10, 1.0)
    u = macrokin.solve_unitarity(sys.net)
    assert u["feasible"]
    assert abs(u["xi"][0] - 0.5) < 1e-10
    assert macrokin.check_detailed_balance(sys.net, u["xi"])
    p = macrokin.entropy_project(u["xi"], [[1, 1]], [1.0])
    assert p["converged"]
    assert abs(p["c"][0] - 0.5) < 1e-10
    assert p["kl"] < 1e-12


def test_exact_chain_binomial():
    sys = macrokin.ehrenfest(8, 1.0)
    chain = macrokin.exact_chain(sys.net, sys.n0, sys.N)
    assert len(chain["states"]) == 9
    pi = dict(zip((tuple(s) for s in chain["states"]), chain["stationary"]))
    for k in range(9):
        expected = math.comb(8, k) / 2.0**8
        assert abs(pi[(k, 8 - k)] - expected) < 1e-10


def test_return_time_and_mixing():
    net = macrokin.parse_network("species: A B\nA -> B @ 1\nB -> A @ 2\n")
    rt = macrokin.mean_return_time(net, [1, 0], 1, [1, 0])
    assert abs(rt["continuous"] - rt["continuous_fp"]) < 1e-9
    assert abs(rt["continuous"] - 1.5) < 1e-9  # pi=(2/3,1/3), exit rate 1
    t = macrokin.tv_mixing(net, [1, 0], 1, 0.25, 1e-4, 50.0)
    exact = math.log((1.0 / 3.0) / 0.25) / 3.0  # TV(t) = e^{-3t}/3
    assert abs(t - exact) < 1e-3


def test_schlogl_infeasible():
    net = macrokin.schlogl_network()
    u = macrokin.solve_unitarity(net)
    assert not u["feasible"]


def test_fits():
    hist = [1e6 * math.exp(-s / 10.0) for s in range(40)]
    f = macrokin.fit_exponential(hist)
    assert f["model"] == "exponential"
    assert abs(f["parameter"] - 0.1) < 1e-9
    xy = [(float(s), 1e8 * s**-2.0) for s in range(1, 200)]
    g = macrokin.fit_power_law(xy)
    assert abs(g["parameter"] - 2.0) < 1e-9


def test_model_helpers():
    names = macrokin.model_names()
    assert "ehrenfest" in names and "monkey" in names
    hist = macrokin.yule_run(0.0, 500, 3)
    assert hist[0] == 0.0
    words = macrokin.monkey_text(3, 20000, 5)
    counts = [c for (_, c) in words]
    assert counts == sorted(counts, reverse=True)
    o = macrokin.majority_oracle(9)
    assert abs(o["absorb_up"][0]) < 1e-12 and abs(o["absorb_up"][-1] - 1.0) < 1e-12
    stats = macrokin.kac_ring(60, 0.2, 0.0, 120, 9)
    assert abs(stats[0] - 1.0) < 1e-12
    assert abs(stats[-1] - 1.0) < 1e-12  # deterministic ring is 2n-periodic
