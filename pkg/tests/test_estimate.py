import math

import numpy as np
import pytest

from pgnet import (
    DegenerateTailError,
    DegreeHistogram,
    EmptyTailError,
    EstimationError,
    ModelParams,
    ParamError,
    RngSpec,
    average_distribution,
    degree_histogram,
    empirical_variance,
    estimate_gamma_ml,
    fit_distribution,
    generate_pg,
    loglog_slope,
)


def test_single_degree_closed_form():
    # one node at degree 20, k_min 10: gamma = 1 + 1/ln 2
    fit = estimate_gamma_ml({20: 1}, k_min=10)
    assert fit.gamma_hat == pytest.approx(1.0 + 1.0 / math.log(2.0), abs=1e-14)
    assert fit.k_min == 10 and fit.n_tail == 1
    assert fit.as_dict() == {"gamma_hat": fit.gamma_hat, "k_min": 10, "n_tail": 1}


def test_accepts_histogram_or_mapping():
    h = DegreeHistogram({20: 2, 3: 7})
    assert estimate_gamma_ml(h, k_min=10).gamma_hat == estimate_gamma_ml({20: 2}, k_min=10).gamma_hat


def test_count_scale_invariance():
    base = {12: 3, 30: 1, 55: 2}
    g1 = estimate_gamma_ml(base, k_min=10).gamma_hat
    g2 = estimate_gamma_ml({k: 7 * c for k, c in base.items()}, k_min=10).gamma_hat
    assert g1 == pytest.approx(g2, abs=1e-13)


def test_sub_threshold_degrees_are_ignored():
    tail = {12: 3, 30: 1}
    with_noise = {**tail, 1: 100, 5: 40, 9: 3}
    assert (
        estimate_gamma_ml(tail, k_min=10).gamma_hat
        == estimate_gamma_ml(with_noise, k_min=10).gamma_hat
    )


def test_fractional_counts_are_legal():
    fit = estimate_gamma_ml({20: 0.5, 40: 0.25}, k_min=10)
    assert math.isfinite(fit.gamma_hat)
    assert fit.n_tail == 1  # rounded tail weight


def test_tail_error_conditions():
    with pytest.raises(EmptyTailError):
        estimate_gamma_ml({1: 5, 9: 2}, k_min=10)
    with pytest.raises(DegenerateTailError):
        estimate_gamma_ml({10: 5}, k_min=10)  # every tail node sits at k_min
    with pytest.raises(ParamError):
        estimate_gamma_ml({20: 1}, k_min=0)
    with pytest.raises(ParamError):
        estimate_gamma_ml({20: 1}, k_min=2.5)
    with pytest.raises(EstimationError):
        estimate_gamma_ml({20: -1}, k_min=10)


def test_recovers_exponent_of_an_exact_power_law_tail():
    # expected counts of p(k) ~ k^{-2.5}; known small positive bias
    # of about (gamma-1)^2 / (2 k_min) from treating k as continuous
    ks = np.arange(50, 200001)
    w = ks.astype(float) ** -2.5
    h = dict(zip(ks.tolist(), (w / w.sum() * 1e6).tolist()))
    fit = estimate_gamma_ml(h, k_min=50)
    assert fit.gamma_hat == pytest.approx(2.5, abs=0.05)
    assert fit.gamma_hat > 2.5  # the bias direction is known


def test_average_distribution_basics():
    h1 = DegreeHistogram({0: 2, 1: 1, 3: 1})
    h2 = DegreeHistogram({0: 1, 2: 3})
    avg = average_distribution([h1, h2])
    assert avg.t == 4
    assert float(avg.values.sum()) == pytest.approx(1.0)
    assert avg.p(0) == pytest.approx(3 / 8)
    assert avg.p(2) == pytest.approx(3 / 8)
    with pytest.raises(EstimationError):
        average_distribution([])
    with pytest.raises(EstimationError):
        average_distribution([h1, DegreeHistogram({0: 5})])  # unequal totals


def test_fit_distribution_matches_single_histogram_fit():
    g = generate_pg(None, ModelParams(0.0, 0.0, 1.0), 4000, RngSpec(12))
    h = degree_histogram(g)
    direct = estimate_gamma_ml(h, k_min=10)
    avg = fit_distribution([h], k_min=10)
    assert avg.gamma_hat == pytest.approx(direct.gamma_hat, rel=1e-9)
    assert avg.n_tail == direct.n_tail


def test_empirical_variance_frozen_example():
    h1 = DegreeHistogram({1: 1, 2: 9})  # p(1) = 0.1
    h2 = DegreeHistogram({1: 2, 3: 8})  # p(1) = 0.2
    assert empirical_variance([h1, h2], 1) == pytest.approx(0.005, abs=1e-15)
    with pytest.raises(EstimationError):
        empirical_variance([h1], 1)


def test_loglog_slope_exact_on_a_pure_power_law():
    ks = np.arange(1, 200)
    ps = ks.astype(float) ** -2.5
    assert loglog_slope(ks, ps, 10, 60) == pytest.approx(-2.5, abs=1e-12)
    # zero entries inside the window are dropped, not log'd
    ps2 = ps.copy()
    ps2[15] = 0.0
    assert loglog_slope(ks, ps2, 10, 60) == pytest.approx(-2.5, abs=1e-12)
    with pytest.raises(EstimationError):
        loglog_slope(ks, np.zeros_like(ps), 10, 60)
