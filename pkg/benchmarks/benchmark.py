"""Time the numba kernels against the pure-numpy fallback.

Both backends consume identical pre-drawn uniform streams and must produce
bit-identical integer outputs; this script asserts that agreement on each
workload before reporting timings, so it doubles as an end-to-end
consistency check at larger sizes than the unit tests use.

Run: python3 benchmarks/benchmark.py [--n 20000] [--reps 5]
"""

import argparse
import time

import numpy as np

from pgnet import ModelParams, RngSpec, generate_pg
from pgnet._kernels_numba import (
    attach_multi as nb_attach,
    master_evolve as nb_evolve,
    poisson_counts as nb_poisson,
    replay_loglik as nb_loglik,
    replay_summary as nb_replay,
)
from pgnet._kernels_numpy import (
    attach_multi as np_attach,
    master_evolve as np_evolve,
    poisson_counts as np_poisson,
    replay_loglik as np_loglik,
    replay_summary as np_replay,
)


def best_of(fn, reps):
    best = float("inf")
    out = None
    for _ in range(reps):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_generation(n, reps):
    lam, a, b = 1.0, 0.0, 0.0
    gen = RngSpec(123).generator()
    u_m = gen.random(n - 2)
    ms = nb_poisson(u_m, lam)
    assert (ms == np_poisson(u_m, lam)).all()
    us = gen.random(int(ms.sum()))
    deg0 = np.array([1, 1], dtype=np.int64)

    t_nb, (eu1, ev1) = best_of(lambda: nb_attach(deg0.copy(), ms, us, a, b), reps)
    t_np, (eu2, ev2) = best_of(lambda: np_attach(deg0.copy(), ms, us, a, b), reps)
    assert (eu1 == eu2).all() and (ev1 == ev2).all()
    return "generate  ", n, t_nb, t_np


def bench_replay(n, reps):
    g = generate_pg(None, ModelParams(a=-0.5, b=0.3, lam=1.5), n, RngSpec(7))
    us, ws = g.edge_arrays()
    pos = np.arange(n, dtype=np.int64)

    t_nb, out1 = best_of(lambda: nb_replay(us, ws, pos, n), reps)
    t_np, out2 = best_of(lambda: np_replay(us, ws, pos, n), reps)
    for x, y in zip(out1, out2):
        assert (np.asarray(x) == np.asarray(y)).all()
    m, sumdeg, n0, rs, rt, rk, rcs = out1
    ll1 = nb_loglik(sumdeg, n0, rs, rk, rcs, n, -0.5, 0.3, 1.5)
    ll2 = np_loglik(sumdeg, n0, rs, rk, rcs, n, -0.5, 0.3, 1.5)
    assert abs(ll1 - ll2) < 1e-9 * abs(ll1)
    return "replay    ", n, t_nb, t_np


def bench_evolve(t_final, reps):
    counts0 = np.zeros(2001)
    counts0[1] = 2.0
    t_nb, (c1, e1) = best_of(lambda: nb_evolve(counts0.copy(), 2, t_final, 0.0, 0.0, 1.0), reps)
    t_np, (c2, e2) = best_of(lambda: np_evolve(counts0.copy(), 2, t_final, 0.0, 0.0, 1.0), reps)
    assert np.allclose(c1, c2, rtol=1e-12, atol=1e-300) and abs(e1 - e2) < 1e-12
    return "evolve    ", t_final, t_nb, t_np


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20000, help="nodes (generation, replay)")
    ap.add_argument("--t", type=int, default=5000, help="final size (evolution)")
    ap.add_argument("--reps", type=int, default=5, help="repetitions, best-of timing")
    args = ap.parse_args()

    print(f"{'workload':<10} {'size':>8} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for row in (
        bench_generation(args.n, args.reps),
        bench_replay(args.n, args.reps),
        bench_evolve(args.t, args.reps),
    ):
        name, size, t_nb, t_np = row
        print(f"{name:<10} {size:>8} {t_nb * 1e3:>9.2f}ms {t_np * 1e3:>9.2f}ms {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
