"""numba-compiled hot kernels.

Kernels consume pre-drawn uniform arrays instead of generator objects: one
uniform per Poisson/binomial/target draw, inversion by sequential search and
cumulative-weight bisection. The numpy backend replays the identical stream,
so both backends produce bit-identical networks.
"""

import math

import numpy as np
from numba import njit

BACKEND_NAME = "numba"


@njit(cache=True)
def _poisson_inv(u, lam):
    # smallest k with CDF(k) >= u; cap guards against CDF saturation
    term = math.exp(-lam)
    cdf = term
    k = 0
    cap = int(10.0 * lam) + 128
    while u > cdf and k < cap:
        k += 1
        term *= lam / k
        cdf += term
    return k


@njit(cache=True)
def poisson_counts(u, lam):
    """Poisson(lam) draw per uniform."""
    out = np.empty(u.shape[0], dtype=np.int64)
    for j in range(u.shape[0]):
        out[j] = _poisson_inv(u[j], lam)
    return out


@njit(cache=True)
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


@njit(cache=True)
def _cum_weights(deg, t, a, b, cum):
    # prefix sums of r(deg[i]) over nodes i < t; returns the total
    c = 0.0
    for i in range(t):
        if deg[i] == 0:
            c += b
        else:
            c += deg[i] + a
        cum[i] = c
    return c


@njit(cache=True)
def _pick(cum, t, x):
    # smallest i with cum[i] > x (np.searchsorted side='right'), clamped
    lo = 0
    hi = t
    while lo < hi:
        mid = (lo + hi) // 2
        if cum[mid] > x:
            hi = mid
        else:
            lo = mid + 1
    if lo >= t:
        lo = t - 1
    return lo


@njit(cache=True)
def attach_multi(deg0, m, u, a, b):
    """Growth with replacement: step j adds node t0+j with m[j] edge copies,
    each target drawn from the step-start weights (uniform fallback when the
    total weight is zero). Returns (target, new node) edge arrays."""
    t0 = deg0.shape[0]
    steps = m.shape[0]
    n = t0 + steps
    deg = np.zeros(n, dtype=np.int64)
    deg[:t0] = deg0
    e_total = 0
    for j in range(steps):
        e_total += m[j]
    eu = np.empty(e_total, dtype=np.int64)
    ev = np.empty(e_total, dtype=np.int64)
    cum = np.empty(n, dtype=np.float64)
    e = 0
    uptr = 0
    for j in range(steps):
        t = t0 + j
        mj = m[j]
        if mj == 0:
            continue
        total = _cum_weights(deg, t, a, b, cum)
        start = e
        for _ in range(mj):
            x = u[uptr]
            uptr += 1
            if total > 0.0:
                tgt = _pick(cum, t, x * total)
            else:
                tgt = int(x * t)
                if tgt >= t:
                    tgt = t - 1
            eu[e] = tgt
            ev[e] = t
            e += 1
        for i in range(start, e):
            deg[eu[i]] += 1
        deg[t] = mj
    return eu, ev


@njit(cache=True)
def attach_distinct(deg0, m, u, a, b):
    """Growth without replacement: same as attach_multi but each drawn target
    is removed (weight zeroed, prefix sums rebuilt), so the m[j] targets are
    distinct. Caller guarantees m[j] <= t0 + j."""
    t0 = deg0.shape[0]
    steps = m.shape[0]
    n = t0 + steps
    deg = np.zeros(n, dtype=np.int64)
    deg[:t0] = deg0
    e_total = 0
    for j in range(steps):
        e_total += m[j]
    eu = np.empty(e_total, dtype=np.int64)
    ev = np.empty(e_total, dtype=np.int64)
    w = np.empty(n, dtype=np.float64)
    cum = np.empty(n, dtype=np.float64)
    drawn = np.zeros(n, dtype=np.uint8)
    e = 0
    uptr = 0
    for j in range(steps):
        t = t0 + j
        mj = m[j]
        if mj == 0:
            continue
        for i in range(t):
            if deg[i] == 0:
                w[i] = b
            else:
                w[i] = deg[i] + a
        start = e
        for d in range(mj):
            c = 0.0
            for i in range(t):
                c += w[i]
                cum[i] = c
            x = u[uptr]
            uptr += 1
            if c > 0.0:
                tgt = _pick(cum, t, x * c)
            else:
                # uniform over the t-d candidates not yet drawn this step
                avail = t - d
                r = int(x * avail)
                if r >= avail:
                    r = avail - 1
                tgt = -1
                cnt = 0
                for i in range(t):
                    if drawn[i] == 0:
                        if cnt == r:
                            tgt = i
                            break
                        cnt += 1
            w[tgt] = 0.0
            drawn[tgt] = 1
            eu[e] = tgt
            ev[e] = t
            e += 1
        for i in range(start, e):
            deg[eu[i]] += 1
            drawn[eu[i]] = 0
        deg[t] = mj
    return eu, ev


@njit(cache=True)
def replay_summary(eu, ev, pos, n):
    """Compact growth history of an observed graph under an arrival order.

    pos maps node label -> arrival position. Each edge copy belongs to the
    step of its later endpoint. Returns per-step arrays (new-node edge count
    m, degree sum and zero-degree count just before the step) plus one record
    per (step, target) pair: arrival step, target position, target degree at
    attachment, copies received. Records are sorted by (step, target)."""
    E = eu.shape[0]
    key = np.empty(E, dtype=np.int64)
    for e in range(E):
        pu = pos[eu[e]]
        pv = pos[ev[e]]
        if pu < pv:
            key[e] = pv * n + pu
        else:
            key[e] = pu * n + pv
    order = np.argsort(key)
    skey = np.empty(E, dtype=np.int64)
    for e in range(E):
        skey[e] = key[order[e]]
    m = np.zeros(n - 1, dtype=np.int64)
    sumdeg = np.zeros(n - 1, dtype=np.int64)
    n0 = np.zeros(n - 1, dtype=np.int64)
    rec_step = np.empty(E, dtype=np.int64)
    rec_target = np.empty(E, dtype=np.int64)
    rec_k = np.empty(E, dtype=np.int64)
    rec_s = np.empty(E, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    sd = 0
    z = 1  # the seed node starts isolated
    ptr = 0
    r = 0
    for j in range(1, n):
        sumdeg[j - 1] = sd
        n0[j - 1] = z
        mj = 0
        while ptr < E and skey[ptr] // n == j:
            kk = skey[ptr]
            tgt = kk - j * n
            s = 0
            while ptr < E and skey[ptr] == kk:
                s += 1
                ptr += 1
            rec_step[r] = j
            rec_target[r] = tgt
            rec_k[r] = deg[tgt]
            rec_s[r] = s
            r += 1
            if deg[tgt] == 0:
                z -= 1
            deg[tgt] += s
            mj += s
        deg[j] = mj
        m[j - 1] = mj
        sd += 2 * mj
        if mj == 0:
            z += 1
    return (
        m,
        sumdeg,
        n0,
        rec_step[:r].copy(),
        rec_target[:r].copy(),
        rec_k[:r].copy(),
        rec_s[:r].copy(),
    )


@njit(cache=True)
def replay_loglik(sumdeg, n0, rec_step, rec_k, rec_s, n, a, b, lam):
    """Log-probability of a replay summary under (a, b, lam).

    Nodes receiving no copies contribute -lam q summed over the step, which
    telescopes to -lam per step; only positive records remain. -inf when a
    copy lands on a zero-weight node while the step total was positive."""
    ll = -lam * (n - 1)
    for r in range(rec_step.shape[0]):
        j = rec_step[r]
        R = sumdeg[j - 1] + a * j + (b - a) * n0[j - 1]
        if R > 0.0:
            k = rec_k[r]
            wt = b if k == 0 else k + a
            if wt <= 0.0:
                return -np.inf
            q = wt / R
        else:
            q = 1.0 / j
        s = rec_s[r]
        ll += s * math.log(lam * q) - math.lgamma(s + 1.0)
    return ll


@njit(cache=True)
def master_evolve(counts0, t0, t_final, a, b, lam):
    """Expected degree counts marched from t0 to t_final.

    Mean-field denominator R = t (2 lam + a) + (b - a) n_t(0) uses the
    current iterate. Poisson kernel truncated once every term drops below
    1e-15 past the kernel mean. Returns (counts, max relative mass error);
    the error is +inf if R went nonpositive or the counts overflowed."""
    K = counts0.shape[0] - 1
    counts = counts0.copy()
    newc = np.empty(K + 1, dtype=np.float64)
    term = math.exp(-lam)
    newc[0] = term
    for k in range(1, K + 1):
        term *= lam / k
        newc[k] = term
    mu = np.empty(K + 1, dtype=np.float64)
    kterm = np.empty(K + 1, dtype=np.float64)
    acc = np.empty(K + 1, dtype=np.float64)
    max_err = 0.0
    for t in range(t0, t_final):
        R = t * (2.0 * lam + a) + (b - a) * counts[0]
        if not R > 0.0:
            return counts, np.inf
        mumax = 0.0
        for k in range(K + 1):
            rk = b if k == 0 else k + a
            mu[k] = lam * rk / R
            if mu[k] > mumax:
                mumax = mu[k]
        for k in range(K + 1):
            kterm[k] = math.exp(-mu[k])
            acc[k] = counts[k] * kterm[k]
        s = 1
        while s <= K:
            hi = K + 1 - s
            tmax = 0.0
            for k in range(hi):
                kterm[k] *= mu[k] / s
                acc[k + s] += counts[k] * kterm[k]
                if kterm[k] > tmax:
                    tmax = kterm[k]
            if tmax < 1e-15 and s >= mumax:
                break
            s += 1
        total = 0.0
        for k in range(K + 1):
            counts[k] = acc[k] + newc[k]
            total += counts[k]
        if not math.isfinite(total):
            return counts, np.inf
        err = abs(total - (t + 1.0)) / (t + 1.0)
        if err > max_err:
            max_err = err
    return counts, max_err
