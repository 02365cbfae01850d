"""Exact growth likelihood and MCMC samplers over parameters, orders, graphs.

The likelihood treats an observed graph as grown node by node from a single
seed under an arrival order sigma. Each edge copy belongs to the growth step
of its later endpoint; the per-step copy counts toward earlier nodes are
independent Poissons with means lam q, where q is the normalized attachment
weight at the start of the step. Summing the -lam q terms over a step gives
-lam, so the log-likelihood needs only the (step, target) pairs that received
copies. replay_summary() extracts those records once per order; evaluating a
new parameter point reuses them.
"""

import math
from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .errors import ChainInitError, ParamError
from .generate import RngSpec, _as_generator
from .graph import MultiGraph
from .params import ModelParams


def identity_order(n):
    """Arrival order that keeps node labels: position j holds node j."""
    return np.arange(int(n), dtype=np.int64)


def degree_descending_order(g):
    """Arrival order with high-degree nodes first (stable within ties).

    Hubs are old under preferential attachment, so this is the default
    chain start for order inference.
    """
    return np.argsort(-g.degrees(), kind="stable").astype(np.int64)


def check_order(order, n):
    """Validate that order is a permutation of 0..n-1."""
    order = np.asarray(order)
    if order.shape != (n,):
        raise ParamError(f"order must have shape ({n},), got {order.shape}")
    if not np.issubdtype(order.dtype, np.integer):
        raise ParamError(f"order must be integer-valued, got dtype {order.dtype}")
    if order.size and not ((order >= 0) & (order < n)).all():
        raise ParamError("order entries out of range")
    seen = np.zeros(n, dtype=bool)
    seen[order] = True
    if not seen.all():
        raise ParamError("order is not a permutation")


def _positions(order):
    pos = np.empty(order.shape[0], dtype=np.int64)
    pos[order] = np.arange(order.shape[0], dtype=np.int64)
    return pos


def _checked_order(g, sigma):
    n = g.num_nodes
    if n < 1:
        raise ParamError("replay needs at least one node")
    if sigma is None:
        return identity_order(n)
    sigma = np.asarray(sigma)
    check_order(sigma, n)
    return sigma.astype(np.int64)


@dataclass(frozen=True)
class ReplaySummary:
    """Growth history of a graph under one arrival order, compressed.

    Per step j = 1..n-1: new-node copy count m, degree sum and zero-degree
    node count just before the step. Per (step, target) record: target
    position, its degree at attachment, copies received. Only targets that
    received copies appear; the zero-copy Poisson factors telescope into
    the -lam-per-step term of loglik().
    """

    n: int
    m: np.ndarray
    sumdeg: np.ndarray
    n0: np.ndarray
    rec_step: np.ndarray
    rec_target: np.ndarray
    rec_k: np.ndarray
    rec_s: np.ndarray

    def loglik(self, params):
        """Log-probability of this growth history under params."""
        return float(
            kernels.replay_loglik(
                self.sumdeg,
                self.n0,
                self.rec_step,
                self.rec_k,
                self.rec_s,
                self.n,
                params.a,
                params.b,
                params.lam,
            )
        )


def _summarize(us, ws, pos, n):
    m, sumdeg, n0, rs, rt, rk, rcs = kernels.replay_summary(us, ws, pos, n)
    return ReplaySummary(
        n=n, m=m, sumdeg=sumdeg, n0=n0, rec_step=rs, rec_target=rt, rec_k=rk, rec_s=rcs
    )


def replay_summary(g, sigma=None):
    """Compressed growth history of g under sigma (default: identity)."""
    order = _checked_order(g, sigma)
    us, ws = g.edge_arrays()
    return _summarize(us, ws, _positions(order), g.num_nodes)


def replay(g, sigma=None):
    """Per-step growth history of g under sigma (default: identity).

    Returns a list with one (k, s) pair per step t = 1..n-1: k[i] is the
    degree of arrival-node i among the first t arrivals, s[i] the number of
    edge copies the newcomer sends to it. Every edge copy of g is attributed
    to exactly one step, that of its later endpoint.
    """
    summ = replay_summary(g, sigma)
    out = []
    deg = np.zeros(summ.n, dtype=np.int64)
    r = 0
    n_rec = summ.rec_step.shape[0]
    for j in range(1, summ.n):
        s_vec = np.zeros(j, dtype=np.int64)
        while r < n_rec and summ.rec_step[r] == j:
            s_vec[summ.rec_target[r]] = summ.rec_s[r]
            r += 1
        out.append((deg[:j].copy(), s_vec))
        deg[:j] += s_vec
        deg[j] = s_vec.sum()
    return out


def log_prob_network(g, params, sigma=None):
    """Log-probability that the growth process produces g under sigma.

    -inf when some copy lands on a zero-weight node while other nodes
    carried weight (impossible under the model, e.g. b = 0 and a degree-0
    target). The zero-total-weight uniform fallback matches the generators.
    """
    return replay_summary(g, sigma).loglik(params)


@dataclass(frozen=True)
class McmcConfig:
    """Sampler settings shared by the parameter and graph chains.

    Proposal scales act on log lam, log(1 + a), log b; a scale of 0 freezes
    that coordinate. lock_ab ties a = b to one positive coordinate moved
    with step_a. Every sigma_every iterations the order chain attempts
    swap_moves_per_iter random transpositions (sigma_every=0 fixes the
    order). record_sigma stores the arrival order of each retained sample.
    rng accepts an RngSpec, a Generator, or a seed; None means RngSpec(0).
    """

    n_iter: int
    burn_in: int = 0
    thin: int = 1
    step_a: float = 0.1
    step_b: float = 0.1
    step_lam: float = 0.1
    swap_moves_per_iter: int = 10
    sigma_every: int = 1
    lock_ab: bool = False
    record_sigma: bool = False
    rng: object = None

    def __post_init__(self):
        for name in ("n_iter", "burn_in", "thin", "swap_moves_per_iter", "sigma_every"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 0:
                raise ParamError(f"{name} must be a non-negative integer, got {v!r}")
        if self.n_iter <= self.burn_in:
            raise ParamError(f"n_iter {self.n_iter} must exceed burn_in {self.burn_in}")
        if self.thin < 1:
            raise ParamError(f"thin must be >= 1, got {self.thin}")
        for name in ("step_a", "step_b", "step_lam"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v) or v < 0:
                raise ParamError(f"{name} must be a finite number >= 0, got {v!r}")

    def generator(self):
        if self.rng is None:
            return RngSpec(0).generator()
        return _as_generator(self.rng)


@dataclass
class McmcChain:
    """Recorded parameter samples plus acceptance diagnostics."""

    a: np.ndarray
    b: np.ndarray
    lam: np.ndarray
    log_post: np.ndarray
    iters: np.ndarray
    accept_theta: float
    accept_sigma: float
    final_params: ModelParams
    final_order: np.ndarray
    sigma: list = None

    def __len__(self):
        return int(self.lam.shape[0])

    def summary(self):
        n = len(self)
        out = {"n": n}
        for name in ("a", "b", "lam"):
            arr = getattr(self, name)
            out[f"mean_{name}"] = float(arr.mean()) if n else None
            out[f"sd_{name}"] = float(arr.std(ddof=1)) if n >= 2 else None
        for name in ("accept_theta", "accept_sigma"):
            v = getattr(self, name)
            out[name] = float(v) if math.isfinite(v) else None
        return out


def _theta_logprior(params, cfg):
    # log density in the sampled (log-transformed) coordinates, unit-rate
    # exponential priors on lam, 1 + a, b (or the tied coordinate); frozen
    # coordinates contribute a constant and are dropped
    lp = 0.0
    if cfg.step_lam > 0.0:
        lp += math.log(params.lam) - params.lam
    if cfg.lock_ab:
        if cfg.step_a > 0.0:
            lp += math.log(params.a) - params.a
    else:
        if cfg.step_a > 0.0:
            w = 1.0 + params.a
            lp += math.log(w) - w
        if cfg.step_b > 0.0:
            lp += math.log(params.b) - params.b
    return lp


def _propose_theta(params, cfg, gen):
    # multiplicative lognormal walk per unfrozen coordinate; one normal is
    # consumed per unfrozen coordinate no matter what. None = out of domain.
    ok = True
    lam = params.lam
    if cfg.step_lam > 0.0:
        lam *= math.exp(cfg.step_lam * gen.standard_normal())
        ok = ok and 0.0 < lam < math.inf
    if cfg.lock_ab:
        c = params.a
        if cfg.step_a > 0.0:
            c *= math.exp(cfg.step_a * gen.standard_normal())
            ok = ok and 0.0 < c < math.inf
        a = b = c
    else:
        a, b = params.a, params.b
        if cfg.step_a > 0.0:
            w = (1.0 + a) * math.exp(cfg.step_a * gen.standard_normal())
            ok = ok and 0.0 < w < math.inf
            a = w - 1.0
        if cfg.step_b > 0.0:
            b *= math.exp(cfg.step_b * gen.standard_normal())
            ok = ok and 0.0 < b < math.inf
    if not ok:
        return None
    return ModelParams(a=float(a), b=float(b), lam=float(lam))


def _accepts(log_ratio, u):
    return log_ratio >= 0.0 or u < math.exp(log_ratio)


def _theta_move(summary, params, ll, prior, cfg, gen):
    prop = _propose_theta(params, cfg, gen)
    u = gen.random()
    if prop is not None:
        ll_p = summary.loglik(prop)
        if math.isfinite(ll_p):
            prior_p = _theta_logprior(prop, cfg)
            if _accepts(ll_p + prior_p - ll - prior, u):
                return prop, ll_p, prior_p, 1
    return params, ll, prior, 0


def _sigma_block(us, ws, order, summary, ll, params, cfg, gen):
    # swap_moves_per_iter random transpositions of the arrival order
    acc = 0
    n = summary.n
    for _ in range(cfg.swap_moves_per_iter):
        i = int(gen.integers(n))
        j = (i + 1 + int(gen.integers(n - 1))) % n
        cand = order.copy()
        cand[i], cand[j] = cand[j], cand[i]
        u = gen.random()
        cand_summary = _summarize(us, ws, _positions(cand), n)
        ll_p = cand_summary.loglik(params)
        if math.isfinite(ll_p) and _accepts(ll_p - ll, u):
            order, summary, ll = cand, cand_summary, ll_p
            acc += 1
    return order, summary, ll, acc


def _init_theta(g, cfg):
    n = g.num_nodes
    lam = g.num_edges / (n - 1) if n > 1 and g.num_edges > 0 else 0.5
    if cfg.lock_ab:
        return ModelParams(a=0.5, b=0.5, lam=lam)
    return ModelParams(a=0.0, b=0.5, lam=lam)


def _check_start(params, cfg):
    if cfg.lock_ab:
        if params.a != params.b:
            raise ParamError(f"lock_ab needs a == b, got a={params.a}, b={params.b}")
        if cfg.step_a > 0.0 and params.a <= 0.0:
            raise ChainInitError("tied a = b starts at the boundary 0 with a positive step")
    else:
        if cfg.step_a > 0.0 and params.a <= -1.0:
            raise ChainInitError("a starts at the boundary -1 with a positive step")
        if cfg.step_b > 0.0 and params.b <= 0.0:
            raise ChainInitError("b starts at the boundary 0 with a positive step")


def mcmc_theta(g, config, init=None, sigma=None):
    """Metropolis chain over (a, b, lam) and the arrival order of g.

    Parameter moves reuse the cached replay of the current order; order
    moves are random transpositions re-replayed at the current parameters.
    The default starting order is degree-descending. Returns an McmcChain
    with one sample per thin iterations after burn_in.
    """
    gen = config.generator()
    n = g.num_nodes
    if n < 1:
        raise ParamError("inference needs at least one node")
    order = degree_descending_order(g) if sigma is None else _checked_order(g, sigma)
    params = _init_theta(g, config) if init is None else init
    _check_start(params, config)
    us, ws = g.edge_arrays()
    summary = _summarize(us, ws, _positions(order), n)
    ll = summary.loglik(params)
    if not math.isfinite(ll):
        raise ChainInitError(
            "starting state has zero probability; pick another init or order"
        )
    prior = _theta_logprior(params, config)

    out_a, out_b, out_lam, out_lp, out_it = [], [], [], [], []
    out_sigma = [] if config.record_sigma else None
    acc_t = 0
    acc_s = 0
    tries_s = 0
    for it in range(1, config.n_iter + 1):
        params, ll, prior, hit = _theta_move(summary, params, ll, prior, config, gen)
        acc_t += hit
        if n >= 2 and config.sigma_every > 0 and it % config.sigma_every == 0:
            order, summary, ll, hits = _sigma_block(
                us, ws, order, summary, ll, params, config, gen
            )
            acc_s += hits
            tries_s += config.swap_moves_per_iter
        if it > config.burn_in and (it - config.burn_in) % config.thin == 0:
            out_a.append(params.a)
            out_b.append(params.b)
            out_lam.append(params.lam)
            out_lp.append(ll + prior)
            out_it.append(it)
            if out_sigma is not None:
                out_sigma.append(order.copy())

    return McmcChain(
        a=np.array(out_a, dtype=np.float64),
        b=np.array(out_b, dtype=np.float64),
        lam=np.array(out_lam, dtype=np.float64),
        log_post=np.array(out_lp, dtype=np.float64),
        iters=np.array(out_it, dtype=np.int64),
        accept_theta=acc_t / config.n_iter,
        accept_sigma=acc_s / tries_s if tries_s else float("nan"),
        final_params=params,
        final_order=order,
        sigma=out_sigma,
    )


@dataclass
class GraphChain:
    """Recorded graph-chain samples plus acceptance diagnostics."""

    edge_counts: np.ndarray
    a: np.ndarray
    b: np.ndarray
    lam: np.ndarray
    log_post: np.ndarray
    iters: np.ndarray
    accept_graph: float
    accept_theta: float
    accept_sigma: float
    final_graph: MultiGraph
    final_params: ModelParams
    final_order: np.ndarray
    states: dict


def mcmc_graph(data_loglik, n_nodes, config, init_params=None, init_graph=None,
               track_states=False):
    """Metropolis chain over (graph, theta, sigma) on n_nodes labeled nodes.

    Target: P(data| G) P(G | theta, sigma) pi(theta) with uniform prior over
    orders, where the data term is exp(data_loglik(g)) (data_loglik None
    means 0, so the chain samples the growth prior). Graph moves insert or
    delete one edge copy at a uniformly chosen node pair (deleting from an
    empty pair is an automatic rejection); theta and order moves follow
    mcmc_theta. Freezing all theta steps at 0 fixes the parameters.

    track_states counts visits per graph (keyed by its edge multiset) every
    post-burn-in iteration, which small-state-space tests can compare
    against exact enumeration. Exceptions from data_loglik abort the chain.
    """
    if not isinstance(n_nodes, (int, np.integer)) or isinstance(n_nodes, bool) or n_nodes < 2:
        raise ParamError(f"n_nodes must be an integer >= 2, got {n_nodes!r}")
    n = int(n_nodes)
    gen = config.generator()
    if init_graph is None:
        g = MultiGraph(n)
    else:
        if init_graph.num_nodes != n:
            raise ParamError(f"init_graph has {init_graph.num_nodes} nodes, expected {n}")
        g = init_graph.copy()
    params = _init_theta(g, config) if init_params is None else init_params
    _check_start(params, config)
    order = identity_order(n)

    def growth_ll(graph, pos):
        us, ws = graph.edge_arrays()
        summ = _summarize(us, ws, pos, n)
        return summ, summ.loglik(params)

    pos = _positions(order)
    summary, ll = growth_ll(g, pos)
    dterm = data_loglik(g) if data_loglik is not None else 0.0
    prior = _theta_logprior(params, config)
    if not (math.isfinite(ll) and math.isfinite(dterm)):
        raise ChainInitError("starting graph has zero posterior probability")

    out_edges, out_a, out_b, out_lam, out_lp, out_it = [], [], [], [], [], []
    states = {}
    acc_g = 0
    acc_t = 0
    acc_s = 0
    tries_s = 0
    for it in range(1, config.n_iter + 1):
        # graph move
        i = int(gen.integers(n))
        j = int(gen.integers(n - 1))
        if j >= i:
            j += 1
        insert = gen.random() < 0.5
        u = gen.random()
        if insert or g.multiplicity(i, j) > 0:
            if insert:
                g.add_edge(i, j)
            else:
                g.remove_edge(i, j)
            cand_summary, ll_p = growth_ll(g, pos)
            d_p = dterm
            if math.isfinite(ll_p) and data_loglik is not None:
                d_p = data_loglik(g)
            if (
                math.isfinite(ll_p)
                and math.isfinite(d_p)
                and _accepts(ll_p + d_p - ll - dterm, u)
            ):
                summary, ll, dterm = cand_summary, ll_p, d_p
                acc_g += 1
            elif insert:
                g.remove_edge(i, j)
            else:
                g.add_edge(i, j)
        # theta move (data term does not depend on theta)
        params, ll, prior, hit = _theta_move(summary, params, ll, prior, config, gen)
        acc_t += hit
        # order moves (data term does not depend on the order)
        if config.sigma_every > 0 and it % config.sigma_every == 0:
            us, ws = g.edge_arrays()
            order, summary, ll, hits = _sigma_block(
                us, ws, order, summary, ll, params, config, gen
            )
            pos = _positions(order)
            acc_s += hits
            tries_s += config.swap_moves_per_iter
        if it > config.burn_in:
            if track_states:
                key = tuple(g.edges())
                states[key] = states.get(key, 0) + 1
            if (it - config.burn_in) % config.thin == 0:
                out_edges.append(g.num_edges)
                out_a.append(params.a)
                out_b.append(params.b)
                out_lam.append(params.lam)
                out_lp.append(ll + prior + dterm)
                out_it.append(it)

    return GraphChain(
        edge_counts=np.array(out_edges, dtype=np.int64),
        a=np.array(out_a, dtype=np.float64),
        b=np.array(out_b, dtype=np.float64),
        lam=np.array(out_lam, dtype=np.float64),
        log_post=np.array(out_lp, dtype=np.float64),
        iters=np.array(out_it, dtype=np.int64),
        accept_graph=acc_g / config.n_iter,
        accept_theta=acc_t / config.n_iter,
        accept_sigma=acc_s / tries_s if tries_s else float("nan"),
        final_graph=g,
        final_params=params,
        final_order=order,
        states=states,
    )
