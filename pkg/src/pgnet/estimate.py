"""Degree-distribution estimators and replicate aggregation."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTailError, EmptyTailError, EstimationError, ParamError
from .graph import DegreeHistogram
from .theory import ExpectedDistribution


@dataclass(frozen=True)
class FitResult:
    """Discrete maximum-likelihood power-law fit over degrees >= k_min."""

    gamma_hat: float
    k_min: int
    n_tail: int

    def as_dict(self):
        return {
            "gamma_hat": float(self.gamma_hat),
            "k_min": int(self.k_min),
            "n_tail": int(self.n_tail),
        }


def _tail_items(hist, k_min):
    counts = hist.counts if isinstance(hist, DegreeHistogram) else hist
    items = []
    for k, c in counts.items():
        if k < 0:
            raise EstimationError(f"negative degree {k}")
        if c < 0:
            raise EstimationError(f"negative count {c} for degree {k}")
        if k >= k_min and c > 0:
            items.append((int(k), float(c)))
    return items


def estimate_gamma_ml(hist, k_min=10):
    """ML exponent for a power-law tail over degrees k >= k_min:

        gamma_hat = 1 + n / sum_k n(k) ln(k / k_min),   n = sum_k n(k).

    hist is a DegreeHistogram or a degree -> count mapping; counts may be
    fractional (replicate averages scale out of the formula). Raises
    EmptyTailError without tail observations and DegenerateTailError when
    every tail observation sits exactly at k_min.
    """
    if not isinstance(k_min, (int, np.integer)) or isinstance(k_min, bool) or k_min < 1:
        raise ParamError(f"k_min must be a positive integer, got {k_min!r}")
    items = _tail_items(hist, k_min)
    n = sum(c for _, c in items)
    if n <= 0:
        raise EmptyTailError(f"no observations with degree >= {k_min}")
    s = sum(c * math.log(k / k_min) for k, c in items)
    if s <= 0:
        raise DegenerateTailError(f"all tail observations at k = {k_min}")
    return FitResult(gamma_hat=1.0 + n / s, k_min=int(k_min), n_tail=int(round(n)))


def average_distribution(hists):
    """Mean of the replicate degree distributions as an ExpectedDistribution.

    All histograms must describe networks of the same node count; values[k]
    is the mean of n(k)/N over replicates and t = N.
    """
    hists = list(hists)
    if not hists:
        raise EstimationError("no histograms to average")
    totals = {h.total for h in hists}
    if len(totals) != 1:
        raise EstimationError(f"histogram totals differ: {sorted(totals)}")
    total = totals.pop()
    if total < 1:
        raise EstimationError("histograms are empty")
    kmax = max(h.max_degree() for h in hists)
    acc = np.zeros(kmax + 1, dtype=np.float64)
    for h in hists:
        for k, c in h.counts.items():
            acc[k] += c
    values = acc / (len(hists) * total)
    return ExpectedDistribution(values=values, t=int(total))


def fit_distribution(hists, k_min=10):
    """ML fit of the replicate-averaged distribution, scaled back to counts."""
    avg = average_distribution(hists)
    counts = {k: float(avg.values[k] * avg.t) for k in range(avg.kmax + 1)}
    return estimate_gamma_ml(counts, k_min=k_min)


def empirical_variance(hists, k):
    """Sample variance across replicates of the degree-k fraction n(k)/N."""
    hists = list(hists)
    if len(hists) < 2:
        raise EstimationError(f"variance needs >= 2 histograms, got {len(hists)}")
    v = np.array([h.p(k) for h in hists], dtype=np.float64)
    return float(np.var(v, ddof=1))


def loglog_slope(ks, ps, k_lo, k_hi):
    """Least-squares slope of log p against log k over k_lo <= k <= k_hi.

    Zero-probability rows are dropped; needs at least two surviving points.
    """
    ks = np.asarray(ks, dtype=np.float64)
    ps = np.asarray(ps, dtype=np.float64)
    if ks.shape != ps.shape:
        raise ParamError("ks and ps must have matching shapes")
    keep = (ks >= k_lo) & (ks <= k_hi) & (ps > 0)
    if keep.sum() < 2:
        raise EstimationError(f"need >= 2 positive points in [{k_lo}, {k_hi}]")
    coef = np.polyfit(np.log(ks[keep]), np.log(ps[keep]), 1)
    return float(coef[0])
