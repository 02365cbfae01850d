import math

import numpy as np
import pytest

from pgnet import (
    ChainInitError,
    McmcConfig,
    ModelParams,
    MultiGraph,
    ParamError,
    RngSpec,
    check_order,
    degree_descending_order,
    generate_pg,
    identity_order,
    log_prob_network,
    mcmc_graph,
    mcmc_theta,
    replay,
    replay_summary,
)

STD = ModelParams(0.0, 0.0, 1.0)


def triangle():
    g = MultiGraph(3)
    g.add_edge(0, 1)
    g.add_edge(0, 2)
    g.add_edge(1, 2)
    return g


# ---------------------------------------------------------------- replay


def test_replay_single_edge():
    g = MultiGraph(2)
    g.add_edge(0, 1)
    steps = replay(g)
    assert len(steps) == 1
    k, s = steps[0]
    assert k.tolist() == [0] and s.tolist() == [1]


def test_replay_triangle_identity_order():
    steps = replay(triangle())
    assert steps[0][0].tolist() == [0] and steps[0][1].tolist() == [1]
    assert steps[1][0].tolist() == [1, 1] and steps[1][1].tolist() == [1, 1]


def test_replay_respects_the_order():
    # path 0-1-2; with arrival order (1, 0, 2) the last step attaches to
    # position 0 (node 1) only
    g = MultiGraph(3)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    steps = replay(g, np.array([1, 0, 2]))
    assert steps[0][1].tolist() == [1]
    assert steps[1][0].tolist() == [1, 1]
    assert steps[1][1].tolist() == [1, 0]


def test_replay_attributes_every_copy_once():
    rng = np.random.default_rng(0)
    for trial in range(25):
        n = int(rng.integers(2, 40))
        params = ModelParams(
            a=float(rng.uniform(-0.9, 1.5)),
            b=float(rng.uniform(0.1, 1.5)),
            lam=float(rng.uniform(0.3, 2.5)),
        )
        g = generate_pg(None, params, n, rng)
        order = rng.permutation(n)
        steps = replay(g, order)
        assert sum(int(s.sum()) for _, s in steps) == g.num_edges
        # degrees in any prefix equal accumulated attachment counts, and the
        # step data rebuilds the graph exactly
        rebuilt = MultiGraph(n)
        for j, (k, s) in enumerate(steps, start=1):
            assert len(k) == j and len(s) == j
            for i, copies in enumerate(s.tolist()):
                if copies:
                    rebuilt.add_edge(int(order[j]), int(order[i]), copies)
        assert rebuilt == g


def test_replay_rejects_bad_orders():
    g = triangle()
    with pytest.raises(ParamError):
        replay(g, np.array([0, 1]))
    with pytest.raises(ParamError):
        replay(g, np.array([0, 1, 1]))
    with pytest.raises(ParamError):
        replay(g, np.array([0.0, 1.0, 2.0]))
    check_order(np.array([2, 0, 1]), 3)


def test_order_helpers():
    assert identity_order(4).tolist() == [0, 1, 2, 3]
    g = MultiGraph(4)
    g.add_edge(0, 1)
    g.add_edge(2, 1)
    g.add_edge(2, 3, copies=3)
    # degrees 1, 2, 4, 3
    assert degree_descending_order(g).tolist() == [2, 3, 1, 0]


# ------------------------------------------------------- log probability


def test_log_prob_single_edge_oracle():
    g = MultiGraph(2)
    g.add_edge(0, 1)
    # step 1: Poisson(1) gives one copy (e^{-1}) on the only node
    assert log_prob_network(g, STD) == pytest.approx(-1.0, abs=1e-15)


def test_log_prob_triangle_oracle():
    # e^{-1} * [e^{-1} * (1/2) * (1/2) * 2!/(1!1!)] = 0.25 e^{-2}
    lp = log_prob_network(triangle(), STD)
    assert math.exp(lp) == pytest.approx(0.25 * math.exp(-2.0), abs=1e-16)


def test_log_prob_two_node_multigraph_closed_form():
    for c, lam in ((3, 2.0), (1, 0.7), (5, 1.3)):
        g = MultiGraph(2)
        g.add_edge(0, 1, copies=c)
        want = -lam + c * math.log(lam) - math.lgamma(c + 1)
        got = log_prob_network(g, ModelParams(0.0, 0.0, lam))
        assert got == pytest.approx(want, abs=1e-12)


def test_log_prob_invariant_under_relabeling():
    params = ModelParams(a=-0.5, b=0.3, lam=1.2)
    rng = np.random.default_rng(1)
    g = generate_pg(None, params, 50, rng)
    base = log_prob_network(g, params)
    for _ in range(5):
        perm = rng.permutation(50)
        us, ws = g.edge_arrays()
        relabeled = MultiGraph.from_edge_arrays(50, perm[us], perm[ws])
        assert log_prob_network(relabeled, params, sigma=perm) == pytest.approx(
            base, rel=1e-12
        )


def test_log_prob_zero_weight_target_is_impossible():
    # edges (0,1) and (2,3): node 3 attaches to degree-0 node 2 while
    # other nodes carry weight, and b = 0 gives that zero probability
    g = MultiGraph(4)
    g.add_edge(0, 1)
    g.add_edge(2, 3)
    assert log_prob_network(g, STD) == -math.inf
    # a positive b makes it possible again
    assert math.isfinite(log_prob_network(g, ModelParams(0.0, 0.5, 1.0)))


def test_log_prob_total_sums_to_one_tiny_case():
    # N = 2: outcomes are the number of copies on the only pair
    total = 0.0
    for c in range(40):
        g = MultiGraph(2)
        if c:
            g.add_edge(0, 1, copies=c)
        total += math.exp(log_prob_network(g, ModelParams(0.3, 0.8, 1.5)))
    assert total == pytest.approx(1.0, abs=1e-12)


def test_replay_summary_matches_public_replay():
    g = generate_pg(None, ModelParams(0.2, 0.2, 1.0), 30, RngSpec(2))
    summ = replay_summary(g)
    assert summ.n == 30
    assert int(summ.m.sum()) == g.num_edges
    assert summ.loglik(STD) == log_prob_network(g, STD)


# ------------------------------------------------------------------ mcmc


def test_mcmc_config_validation():
    McmcConfig(n_iter=10)
    with pytest.raises(ParamError):
        McmcConfig(n_iter=0)
    with pytest.raises(ParamError):
        McmcConfig(n_iter=5, burn_in=5)
    with pytest.raises(ParamError):
        McmcConfig(n_iter=5, thin=0)
    with pytest.raises(ParamError):
        McmcConfig(n_iter=5, step_a=-0.1)
    with pytest.raises(ParamError):
        McmcConfig(n_iter=5, step_lam=float("inf"))
    with pytest.raises(ParamError):
        McmcConfig(n_iter=True)


def test_frozen_proposals_always_accept():
    g = generate_pg(None, STD, 60, RngSpec(5))
    cfg = McmcConfig(
        n_iter=200, step_a=0.0, step_b=0.0, step_lam=0.0, sigma_every=0, rng=RngSpec(1)
    )
    init = ModelParams(0.0, 0.5, 1.0)
    chain = mcmc_theta(g, cfg, init=init)
    assert chain.accept_theta == 1.0
    assert math.isnan(chain.accept_sigma)
    assert (chain.lam == 1.0).all() and (chain.b == 0.5).all()
    assert chain.final_params == init


def test_chain_recording_layout():
    g = generate_pg(None, STD, 40, RngSpec(6))
    cfg = McmcConfig(n_iter=100, burn_in=40, thin=6, step_lam=0.3, rng=RngSpec(2))
    chain = mcmc_theta(g, cfg, init=ModelParams(0.0, 0.5, 1.0))
    assert len(chain) == 10
    assert chain.iters.tolist() == list(range(46, 101, 6))
    s = chain.summary()
    assert s["n"] == 10 and math.isfinite(s["mean_lam"]) and s["sd_lam"] >= 0
    assert chain.sigma is None


def test_sigma_recording():
    g = generate_pg(None, STD, 25, RngSpec(7))
    cfg = McmcConfig(
        n_iter=40, burn_in=10, thin=3, step_lam=0.2, record_sigma=True, rng=RngSpec(3)
    )
    chain = mcmc_theta(g, cfg, init=ModelParams(0.0, 0.5, 1.0))
    assert len(chain.sigma) == len(chain) == 10
    for order in chain.sigma:
        check_order(order, 25)


def test_bad_starts_raise():
    g = generate_pg(None, STD, 30, RngSpec(9))
    cfg = McmcConfig(n_iter=10, lock_ab=True, rng=RngSpec(0))
    with pytest.raises(ParamError):
        mcmc_theta(g, cfg, init=ModelParams(0.0, 0.5, 1.0))  # lock needs a == b
    with pytest.raises(ChainInitError):
        mcmc_theta(g, cfg, init=ModelParams(0.0, 0.0, 1.0))  # tied boundary 0
    cfg2 = McmcConfig(n_iter=10, rng=RngSpec(0))
    with pytest.raises(ChainInitError):
        mcmc_theta(g, cfg2, init=ModelParams(-1.0, 0.5, 1.0))  # a at -1
    with pytest.raises(ChainInitError):
        mcmc_theta(g, cfg2, init=ModelParams(0.0, 0.0, 1.0))  # b at 0, movable
    # infeasible starting order: b = 0 frozen with hubs placed first
    g2 = MultiGraph(4)
    g2.add_edge(0, 1)
    g2.add_edge(2, 3)
    cfg3 = McmcConfig(n_iter=10, step_a=0.0, step_b=0.0, step_lam=0.1, rng=RngSpec(0))
    with pytest.raises(ChainInitError):
        mcmc_theta(g2, cfg3, init=ModelParams(0.0, 0.0, 1.0), sigma=np.array([0, 1, 2, 3]))


def test_lambda_posterior_matches_conjugate_form():
    # with a = b frozen at 0 the lambda factor is Gamma(E + 1, N)
    g = generate_pg(None, STD, 200, RngSpec(123))
    E, N = g.num_edges, g.num_nodes
    cfg = McmcConfig(
        n_iter=6000,
        burn_in=1000,
        step_a=0.0,
        step_b=0.0,
        step_lam=0.25,
        swap_moves_per_iter=2,
        sigma_every=5,
        lock_ab=True,
        rng=RngSpec(4),
    )
    chain = mcmc_theta(g, cfg, init=ModelParams(0.0, 0.0, E / (N - 1)), sigma=identity_order(N))
    want_mean = (E + 1) / N
    want_sd = math.sqrt(E + 1) / N
    assert chain.lam.mean() == pytest.approx(want_mean, abs=3 * want_sd / math.sqrt(50))
    assert chain.lam.std(ddof=1) == pytest.approx(want_sd, rel=0.25)


def test_posterior_concentrates_near_truth_free_parameters():
    params = ModelParams(a=0.0, b=0.5, lam=1.5)
    g = generate_pg(None, params, 400, RngSpec(55))
    cfg = McmcConfig(
        n_iter=4000,
        burn_in=1500,
        step_a=0.15,
        step_b=0.25,
        step_lam=0.1,
        swap_moves_per_iter=3,
        sigma_every=4,
        rng=RngSpec(8),
    )
    chain = mcmc_theta(g, cfg)
    assert chain.lam.mean() == pytest.approx(1.5, abs=0.25)
    assert 0.0 < chain.accept_theta < 1.0
    assert 0.0 < chain.accept_sigma <= 1.0


# ------------------------------------------------------------ graph chain


def test_graph_chain_prior_mean_edges():
    # data-free chain samples the growth prior: E[edges] = lam (n - 1)
    cfg = McmcConfig(
        n_iter=30_000,
        burn_in=5_000,
        step_a=0.0,
        step_b=0.0,
        step_lam=0.0,
        swap_moves_per_iter=2,
        sigma_every=4,
        lock_ab=True,
        rng=RngSpec(17),
    )
    chain = mcmc_graph(None, 3, cfg, init_params=ModelParams(0.0, 0.0, 1.0))
    assert chain.edge_counts.mean() == pytest.approx(2.0, abs=0.2)
    assert 0.0 < chain.accept_graph < 1.0
    assert chain.final_graph.num_nodes == 3


def test_graph_chain_visit_counts_match_enumeration():
    # frozen theta, no order moves: stationary law over graphs is the
    # identity-order growth probability, comparable state by state
    lam = 0.8
    cfg = McmcConfig(
        n_iter=120_000,
        burn_in=10_000,
        step_a=0.0,
        step_b=0.0,
        step_lam=0.0,
        sigma_every=0,
        lock_ab=True,
        rng=RngSpec(29),
    )
    chain = mcmc_graph(
        None, 3, cfg, init_params=ModelParams(0.0, 0.0, lam), track_states=True
    )
    total = sum(chain.states.values())
    params = ModelParams(0.0, 0.0, lam)
    # exact probabilities for every visited state
    err = 0.0
    freq_mass = 0.0
    for key, visits in chain.states.items():
        g = MultiGraph(3)
        for u, w, c in key:
            g.add_edge(u, w, c)
        p = math.exp(log_prob_network(g, params))
        f = visits / total
        err += abs(f - p)
        freq_mass += p
    assert freq_mass > 0.999  # visited states carry almost all the mass
    assert err < 0.06  # total-variation gap against the exact law


def test_graph_chain_data_term_shifts_the_distribution():
    cfg = McmcConfig(
        n_iter=20_000,
        burn_in=4_000,
        step_a=0.0,
        step_b=0.0,
        step_lam=0.0,
        sigma_every=0,
        lock_ab=True,
        rng=RngSpec(31),
    )
    flat = mcmc_graph(None, 4, cfg, init_params=ModelParams(0.0, 0.0, 1.0))
    tilted = mcmc_graph(
        lambda g: 0.5 * g.num_edges, 4, cfg, init_params=ModelParams(0.0, 0.0, 1.0)
    )
    assert tilted.edge_counts.mean() > flat.edge_counts.mean() + 0.5


def test_graph_chain_moves_theta_too():
    cfg = McmcConfig(
        n_iter=4000,
        burn_in=1000,
        step_a=0.0,
        step_b=0.0,
        step_lam=0.2,
        swap_moves_per_iter=1,
        sigma_every=2,
        lock_ab=True,
        rng=RngSpec(37),
    )
    chain = mcmc_graph(None, 5, cfg, init_params=ModelParams(0.0, 0.0, 1.0))
    assert chain.lam.std() > 0.0  # lambda explored under its prior
    assert 0.0 < chain.accept_theta <= 1.0
    assert chain.a.shape == chain.edge_counts.shape


def test_graph_chain_validation():
    cfg = McmcConfig(n_iter=10, rng=RngSpec(0))
    with pytest.raises(ParamError):
        mcmc_graph(None, 1, cfg)
    bad = MultiGraph(3)
    with pytest.raises(ParamError):
        mcmc_graph(None, 4, cfg, init_graph=bad)


def test_graph_chain_accepts_init_graph():
    start = MultiGraph(4)
    start.add_edge(0, 1, copies=2)
    start.add_edge(1, 2)
    cfg = McmcConfig(
        n_iter=500,
        step_a=0.0,
        step_b=0.0,
        step_lam=0.0,
        sigma_every=0,
        lock_ab=True,
        rng=RngSpec(41),
    )
    chain = mcmc_graph(None, 4, cfg, init_params=ModelParams(0.0, 0.0, 1.0), init_graph=start)
    assert start.num_edges == 3  # caller's graph untouched
    assert chain.edge_counts.shape == (500,)
