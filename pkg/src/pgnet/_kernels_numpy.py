"""Pure-numpy kernels, selected with PGNET_BACKEND=numpy.

Mirrors the numba backend exactly: same uniform-consumption order, the same
prefix sums (np.cumsum accumulates left to right) and the same bisection
semantics (searchsorted side='right'), so generated networks and replay
summaries are bit-identical across backends. Log-likelihood and
master-equation floats agree to rounding.
"""

import math

import numpy as np

BACKEND_NAME = "numpy"


def _poisson_cdf(lam):
    # sequential recurrence, same accumulation order as the numba backend
    cap = int(10.0 * lam) + 128
    cdf = np.empty(cap + 1)
    term = math.exp(-lam)
    c = term
    cdf[0] = c
    for k in range(1, cap + 1):
        term *= lam / k
        c += term
        cdf[k] = c
    return cdf


def poisson_counts(u, lam):
    """Poisson(lam) draw per uniform."""
    cdf = _poisson_cdf(lam)
    idx = np.searchsorted(cdf, u, side="left")
    return np.minimum(idx, cdf.shape[0] - 1).astype(np.int64)


def binomial_counts(u, t0, lam):
    """Binomial(t, lam/t) draw per uniform, t = t0 + step index."""
    out = np.empty(u.shape[0], dtype=np.int64)
    for j in range(u.shape[0]):
        t = t0 + j
        p = lam / t
        if p >= 1.0:
            out[j] = t
            continue
        pmf = (1.0 - p) ** t
        cdf = pmf
        k = 0
        while u[j] > cdf and k < t:
            k += 1
            pmf *= (t - k + 1) / k * (p / (1.0 - p))
            cdf += pmf
        out[j] = k
    return out


def attach_multi(deg0, m, u, a, b):
    """Growth with replacement; see the numba twin for semantics."""
    t0 = deg0.shape[0]
    steps = m.shape[0]
    n = t0 + steps
    deg = np.zeros(n, dtype=np.int64)
    deg[:t0] = deg0
    e_total = int(m.sum())
    eu = np.empty(e_total, dtype=np.int64)
    ev = np.empty(e_total, dtype=np.int64)
    e = 0
    uptr = 0
    for j in range(steps):
        t = t0 + j
        mj = int(m[j])
        if mj == 0:
            continue
        d = deg[:t]
        w = np.where(d == 0, b, d + a)
        cum = np.cumsum(w)
        total = cum[-1]
        us = u[uptr : uptr + mj]
        uptr += mj
        if total > 0.0:
            tgt = np.searchsorted(cum, us * total, side="right")
            tgt = np.minimum(tgt, t - 1).astype(np.int64)
        else:
            tgt = np.minimum((us * t).astype(np.int64), t - 1)
        eu[e : e + mj] = tgt
        ev[e : e + mj] = t
        np.add.at(deg, tgt, 1)
        deg[t] = mj
        e += mj
    return eu, ev


def attach_distinct(deg0, m, u, a, b):
    """Growth without replacement; see the numba twin for semantics."""
    t0 = deg0.shape[0]
    steps = m.shape[0]
    n = t0 + steps
    deg = np.zeros(n, dtype=np.int64)
    deg[:t0] = deg0
    e_total = int(m.sum())
    eu = np.empty(e_total, dtype=np.int64)
    ev = np.empty(e_total, dtype=np.int64)
    e = 0
    uptr = 0
    for j in range(steps):
        t = t0 + j
        mj = int(m[j])
        if mj == 0:
            continue
        d = deg[:t]
        w = np.where(d == 0, b, d + a).astype(np.float64)
        drawn = np.zeros(t, dtype=bool)
        tgts = np.empty(mj, dtype=np.int64)
        for dd in range(mj):
            cum = np.cumsum(w)
            total = cum[-1]
            x = u[uptr]
            uptr += 1
            if total > 0.0:
                tgt = min(int(np.searchsorted(cum, x * total, side="right")), t - 1)
            else:
                avail = np.flatnonzero(~drawn)
                r = min(int(x * avail.shape[0]), avail.shape[0] - 1)
                tgt = int(avail[r])
            w[tgt] = 0.0
            drawn[tgt] = True
            tgts[dd] = tgt
        eu[e : e + mj] = tgts
        ev[e : e + mj] = t
        deg[tgts] += 1
        deg[t] = mj
        e += mj
    return eu, ev


def replay_summary(eu, ev, pos, n):
    """Vectorized twin of the numba replay; all outputs are integer arrays,
    so the two backends agree exactly."""
    E = eu.shape[0]
    pu = pos[eu]
    pv = pos[ev]
    lo = np.minimum(pu, pv)
    hi = np.maximum(pu, pv)
    key = hi * n + lo
    skey = np.sort(key)
    if E:
        newrun = np.empty(E, dtype=bool)
        newrun[0] = True
        np.not_equal(skey[1:], skey[:-1], out=newrun[1:])
        starts = np.flatnonzero(newrun)
        rec_key = skey[starts]
        rec_s = np.diff(np.append(starts, E)).astype(np.int64)
    else:
        rec_key = np.empty(0, dtype=np.int64)
        rec_s = np.empty(0, dtype=np.int64)
    rec_step = rec_key // n
    rec_target = rec_key - rec_step * n
    m = np.bincount(hi, minlength=n)[1:].astype(np.int64)
    sumdeg = np.zeros(n - 1, dtype=np.int64)
    if n > 2:
        sumdeg[1:] = 2 * np.cumsum(m)[:-1]
    # target degree at attachment = endpoint events of that node in earlier
    # steps, counted inside per-node sorted step lists
    ev_node = np.concatenate([lo, hi])
    ev_step = np.concatenate([hi, hi])
    ekey = np.sort(ev_node * n + ev_step)
    node_ids = np.arange(n, dtype=np.int64)
    node_start = np.searchsorted(ekey, node_ids * n, side="left")
    rec_k = (
        np.searchsorted(ekey, rec_target * n + rec_step, side="left")
        - node_start[rec_target]
    ).astype(np.int64)
    # a node is degree-0 during steps (position, first event step]
    bound = np.append(node_start, 2 * E)
    has = bound[1:] > bound[:-1]
    first = np.full(n, n, dtype=np.int64)
    first[has] = ekey[node_start[has]] - node_ids[has] * n
    d = np.zeros(n + 1, dtype=np.int64)
    ub = np.minimum(first, n - 1)
    np.add.at(d, node_ids + 1, 1)
    np.add.at(d, ub + 1, -1)
    n0 = np.cumsum(d)[1:n]
    return m, sumdeg, n0, rec_step, rec_target, rec_k, rec_s


def replay_loglik(sumdeg, n0, rec_step, rec_k, rec_s, n, a, b, lam):
    """Log-probability of a replay summary under (a, b, lam)."""
    ll = -lam * (n - 1)
    if rec_step.shape[0] == 0:
        return ll
    j = rec_step
    R = sumdeg[j - 1] + a * j + (b - a) * n0[j - 1]
    wt = np.where(rec_k == 0, b, rec_k + a)
    q = np.empty(rec_step.shape[0])
    fallback = ~(R > 0.0)
    q[fallback] = 1.0 / j[fallback]
    live = ~fallback
    if np.any(wt[live] <= 0.0):
        return -np.inf
    q[live] = wt[live] / R[live]
    smax = int(rec_s.max())
    logfact = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, smax + 1)))))
    return float(ll + np.sum(rec_s * np.log(lam * q) - logfact[rec_s]))


def master_evolve(counts0, t0, t_final, a, b, lam):
    """Expected degree counts marched from t0 to t_final; numpy twin of the
    numba kernel (same update order, same truncation rule)."""
    K = counts0.shape[0] - 1
    counts = counts0.copy()
    newc = np.empty(K + 1)
    term = math.exp(-lam)
    newc[0] = term
    for k in range(1, K + 1):
        term *= lam / k
        newc[k] = term
    rvec = np.arange(K + 1, dtype=np.float64) + a
    rvec[0] = b
    max_err = 0.0
    for t in range(t0, t_final):
        R = t * (2.0 * lam + a) + (b - a) * counts[0]
        if not R > 0.0:
            return counts, np.inf
        mu = lam * rvec / R
        mumax = mu.max()
        kterm = np.exp(-mu)
        acc = counts * kterm
        s = 1
        while s <= K:
            hi = K + 1 - s
            kterm[:hi] *= mu[:hi] / s
            acc[s:] += counts[:hi] * kterm[:hi]
            tmax = kterm[:hi].max()
            if tmax < 1e-15 and s >= mumax:
                break
            s += 1
        counts = acc + newc
        total = counts.sum()
        if not math.isfinite(total):
            return counts, np.inf
        err = abs(total - (t + 1.0)) / (t + 1.0)
        if err > max_err:
            max_err = err
    return counts, max_err
