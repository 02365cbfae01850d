"""Network generators built on the growth kernels.

All generators draw their randomness as flat uniform arrays up front and hand
them to the active kernel backend, so a given (master_seed, stream_id) pair
yields the same network under either backend.
"""

from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .errors import GraphError, ParamError
from .graph import MultiGraph


@dataclass(frozen=True)
class RngSpec:
    """Addressable random stream (master_seed, stream_id).

    Streams with the same master seed and different ids are independent, so
    replicate r of a simulation can use stream_id=r and be farmed out to
    worker processes without coordination.
    """

    master_seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("master_seed", "stream_id"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 0:
                raise ParamError(f"{name} must be a non-negative integer, got {v!r}")

    def generator(self):
        ss = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_id,))
        return np.random.default_rng(ss)


def _as_generator(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngSpec):
        return rng.generator()
    if isinstance(rng, (int, np.integer)) and not isinstance(rng, bool):
        return RngSpec(int(rng)).generator()
    raise ParamError(f"rng must be an RngSpec, a Generator, or a seed, got {rng!r}")


def attachment_weights(g, params):
    """Attachment weight r(k) per node of a graph (or per degree entry)."""
    deg = g.degrees() if hasattr(g, "degrees") else np.asarray(g, dtype=np.int64)
    return np.where(deg == 0, float(params.b), deg + float(params.a))


@dataclass(frozen=True)
class GrowthStep:
    """One growth event: the arriving node and its targets, one per copy."""

    node: int
    targets: np.ndarray

    @property
    def copies(self):
        return int(self.targets.shape[0])


def pg_step(g, params, rng):
    """Advance the growth process by one step, in place.

    The arriving node brings Poisson(lam) edge copies; each target is drawn
    with replacement from the weights at the start of the step, or uniformly
    when the total weight is zero. Consumes 1 + m uniforms. Returns
    (g, GrowthStep).
    """
    if g.num_nodes < 1:
        raise GraphError("growth needs at least one existing node")
    gen = _as_generator(rng)
    m = int(kernels.poisson_counts(gen.random(1), params.lam)[0])
    deg = g.degrees()
    ms = np.array([m], dtype=np.int64)
    eu, _ = kernels.attach_multi(deg, ms, gen.random(m), params.a, params.b)
    node = g.add_node()
    for tgt in eu:
        g.add_edge(int(tgt), node)
    return g, GrowthStep(node=node, targets=eu)


def _check_growth(n_final, seed_graph):
    if not isinstance(n_final, (int, np.integer)) or isinstance(n_final, bool):
        raise ParamError(f"n_final must be an integer, got {n_final!r}")
    t0 = seed_graph.num_nodes
    if t0 < 1:
        raise GraphError("seed graph needs at least one node")
    if n_final < t0:
        raise ParamError(f"n_final must be >= {t0} (seed size), got {n_final}")
    return int(n_final) - t0


def _grown(seed_graph, ms, us, a, b, distinct):
    attach = kernels.attach_distinct if distinct else kernels.attach_multi
    eu, ev = attach(seed_graph.degrees(), ms, us, float(a), float(b))
    g = seed_graph.copy()
    for _ in range(ms.shape[0]):
        g.add_node()
    for u, w in zip(eu, ev):
        g.add_edge(int(u), int(w))
    return g


def generate_pg(seed, params, n_final, rng):
    """Grow a Poisson-attachment network from seed to n_final nodes.

    seed None means the default: two nodes joined by one edge. Arriving
    node t brings Poisson(lam) edge copies whose targets are drawn with
    replacement proportionally to r(degree), so parallel edges occur.
    """
    gen = _as_generator(rng)
    seed = MultiGraph.pair_seed() if seed is None else seed
    steps = _check_growth(n_final, seed)
    ms = kernels.poisson_counts(gen.random(steps), params.lam)
    us = gen.random(int(ms.sum()))
    return _grown(seed, ms, us, params.a, params.b, distinct=False)


def generate_ba(seed, m, n_final, rng):
    """Grow a Barabasi-Albert network: each arriving node attaches to m
    distinct targets drawn proportionally to degree (the a = b = 0 weights).
    Needs 1 <= m <= number of seed nodes (default seed: connected pair)."""
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool):
        raise ParamError(f"m must be an integer, got {m!r}")
    gen = _as_generator(rng)
    seed = MultiGraph.pair_seed() if seed is None else seed
    if m < 1 or m > seed.num_nodes:
        raise ParamError(f"m must be in [1, {seed.num_nodes}] for this seed, got {m}")
    steps = _check_growth(n_final, seed)
    ms = np.full(steps, int(m), dtype=np.int64)
    us = gen.random(steps * int(m))
    return _grown(seed, ms, us, 0.0, 0.0, distinct=True)


def generate_pg_binomial(seed, params, n_final, rng):
    """Multi-edge-free variant: arriving node t brings Binomial(t, lam/t)
    edges to distinct targets. The per-step mean stays lam while parallel
    edges are excluded; needs lam <= number of seed nodes."""
    gen = _as_generator(rng)
    seed = MultiGraph.pair_seed() if seed is None else seed
    t0 = seed.num_nodes
    if params.lam > t0:
        raise ParamError(f"binomial variant needs lam <= {t0} (seed size), got {params.lam}")
    steps = _check_growth(n_final, seed)
    ms = kernels.binomial_counts(gen.random(steps), t0, params.lam)
    us = gen.random(int(ms.sum()))
    return _grown(seed, ms, us, params.a, params.b, distinct=True)
