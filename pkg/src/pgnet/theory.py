"""Stationary predictions and the expected-degree-count evolution."""

import math
from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .errors import NumericError, ParamError
from .graph import DegreeHistogram

# quadratic collapses to linear when |b - a| drops below this
_LINEAR_EPS = 1e-9


def solve_p0(params):
    """Stationary fraction p(0) of degree-zero nodes.

    Root of (b-a) x^2 + (2 lam + a + lam b - (b-a) e^{-lam}) x
    - (2 lam + a) e^{-lam} = 0, picked so the density recursion is stable
    there; when a = b the equation is linear with the unique root
    (2 lam + a) e^{-lam} / (2 lam + a + lam a). NumericError when no stable
    root lies strictly inside (0, 1).
    """
    a, b, lam = params.a, params.b, params.lam
    el = math.exp(-lam)
    qa = b - a
    qb = 2.0 * lam + a + lam * b - qa * el
    qc = -(2.0 * lam + a) * el
    if abs(qa) < _LINEAR_EPS:
        if qb <= 0.0:
            raise NumericError("degenerate linear equation for p(0)")
        x = -qc / qb
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0.0:
            raise NumericError("no real root for p(0)")
        sd = math.sqrt(disc)
        # citardauq for qb > 0 avoids cancellation in the small root
        x = -2.0 * qc / (qb + sd) if qb > 0.0 else (sd - qb) / (2.0 * qa)
    if not 0.0 < x < 1.0:
        raise NumericError(f"p(0) root {x} outside (0, 1)")
    dd = 2.0 * lam + a + qa * x
    if dd <= 0.0:
        raise NumericError("nonpositive stationary weight density")
    if -1.0 - lam * b * (2.0 * lam + a) / (dd * dd) >= 0.0:
        raise NumericError("p(0) root is unstable")
    return x


def predicted_gamma(params):
    """Stationary power-law exponent gamma = 3 + (a + (b - a) p(0)) / lam.

    The a = b case reduces to 3 + a / lam exactly, skipping the p(0) solve.
    """
    if params.a == params.b:
        return 3.0 + params.a / params.lam
    p0 = solve_p0(params)
    return 3.0 + (params.a + (params.b - params.a) * p0) / params.lam


def tail_ratio(params, k):
    """Stationary ratio p(k) / p(k-1) = (k + a - 1) / (k + a - 1 + gamma).

    Needs k + a - 1 > 0 so both degrees carry the weight k + a; the ratio
    climbing toward 1 is the power-law signature.
    """
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise ParamError(f"k must be an integer, got {k!r}")
    num = k + params.a - 1.0
    if num <= 0.0:
        raise ParamError(f"tail ratio needs k + a - 1 > 0, got {num}")
    return num / (num + predicted_gamma(params))


@dataclass(frozen=True)
class TheoryPrediction:
    """Stationary predictions bundled for reporting."""

    p0: float
    gamma: float
    mean_degree: float

    @classmethod
    def from_params(cls, params):
        return cls(
            p0=solve_p0(params),
            gamma=predicted_gamma(params),
            mean_degree=2.0 * params.lam,
        )


@dataclass(frozen=True)
class ExpectedDistribution:
    """Expected degree fractions p(k), k = 0..kmax, for networks of t nodes.

    values[k] approximates E n_t(k) / t; mass past kmax is truncated, so the
    vector sums to at most 1 (mass_error records the worst relative leak
    seen while producing it).
    """

    values: np.ndarray
    t: int
    mass_error: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", v)
        if v.ndim != 1 or v.shape[0] < 1:
            raise ParamError("values must be a nonempty 1-d vector")
        if (v < 0).any():
            raise ParamError("values must be non-negative")
        if v.sum() > 1.0 + 1e-9:
            raise ParamError(f"values sum to {v.sum()}, above 1")
        if self.t < 1:
            raise ParamError(f"t must be >= 1, got {self.t}")

    @property
    def kmax(self):
        return int(self.values.shape[0]) - 1

    def p(self, k):
        """Expected fraction of nodes with degree k (0 beyond kmax)."""
        if k < 0 or k > self.kmax:
            return 0.0
        return float(self.values[k])

    def mean_degree(self):
        k = np.arange(self.values.shape[0])
        return float((k * self.values).sum() / self.values.sum())


def evolve_master_equation(params, seed_hist, t_final, k_max=2000):
    """March the expected degree counts from a seed histogram to t_final.

    seed_hist defaults to two degree-1 nodes (t0 = 2). Each step t -> t+1
    convolves the counts with Poisson(lam r(k) / R_t) receipt kernels using
    the mean-field weight sum R_t = t (2 lam + a + (b - a) p_t(0)) of the
    current iterate, then adds the newcomer's Poisson(lam) degree row.
    Counts above k_max are dropped; NumericError if that loses more than
    1e-6 of the node mass (raise k_max) or if R_t turns nonpositive.
    """
    if not isinstance(k_max, (int, np.integer)) or isinstance(k_max, bool) or k_max < 1:
        raise ParamError(f"k_max must be a positive integer, got {k_max!r}")
    if seed_hist is None:
        seed_hist = DegreeHistogram({1: 2})
    t0 = int(seed_hist.total)
    if t0 < 1:
        raise ParamError("seed histogram must contain at least one node")
    if seed_hist.max_degree() > k_max:
        raise ParamError(
            f"seed histogram reaches degree {seed_hist.max_degree()} > k_max {k_max}"
        )
    if not isinstance(t_final, (int, np.integer)) or isinstance(t_final, bool):
        raise ParamError(f"t_final must be an integer, got {t_final!r}")
    if t_final < t0:
        raise ParamError(f"t_final must be >= {t0} (seed size), got {t_final}")
    counts0 = np.zeros(int(k_max) + 1, dtype=np.float64)
    for k, c in seed_hist.counts.items():
        counts0[k] = c
    counts, err = kernels.master_evolve(
        counts0, t0, int(t_final), params.a, params.b, params.lam
    )
    if not math.isfinite(err):
        raise NumericError("master equation diverged (nonpositive weight sum or overflow)")
    if err > 1e-6:
        raise NumericError(
            f"mass leak {err:.2e} past k_max={k_max}; raise k_max for this horizon"
        )
    return ExpectedDistribution(
        values=counts / float(t_final), t=int(t_final), mass_error=float(err)
    )


def write_distribution_csv(dist, path, params=None):
    """Write `k,p_k` rows behind a comment header with params and t."""
    with open(path, "w") as fh:
        if params is not None:
            fh.write(f"# a={params.a!r} b={params.b!r} lam={params.lam!r}\n")
        fh.write(f"# t={dist.t} kmax={dist.kmax} mass_error={dist.mass_error!r}\n")
        fh.write("k,p_k\n")
        for k in range(dist.values.shape[0]):
            fh.write(f"{k},{float(dist.values[k])!r}\n")
