import math

import numpy as np
import pytest

from core.errors import DomainError
from entities.kernels import expected_apps, hit_prob, marginal_gain, match_prob, utility


@pytest.mark.parametrize(
    "p, X, expected",
    [(1.0, 2.0, 1.0), (0.5, 2.0, 0.75), (0.5, 1.5, 0.625), (0.3, 0.0, 0.0)],
)
def test_match_prob_values(p, X, expected):
    assert match_prob(p, X) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("p, X", [(-0.1, 1.0), (1.1, 1.0), (0.5, -1.0), (0.5, math.nan)])
def test_match_prob_rejects_out_of_range(p, X):
    with pytest.raises(DomainError):
        match_prob(p, X)


@pytest.mark.parametrize(
    "p, X, expected", [(1.0, 3.0, 1.0), (0.5, 2.0, 1.5), (1e-12, 2.0, 2.0), (0.0, 2.5, 2.5)]
)
def test_expected_apps_values(p, X, expected):
    assert expected_apps(p, X) == pytest.approx(expected, rel=1e-9)


def test_expected_apps_continuous_across_series_threshold():
    below = expected_apps(0.99e-8, 3.5)
    above = expected_apps(1.01e-8, 3.5)
    assert below == pytest.approx(above, rel=1e-7)


def test_monotone_in_p_and_X():
    ps = np.linspace(0.0, 1.0, 41)
    Xs = np.linspace(0.0, 6.0, 49)

    for X in Xs:
        values = [match_prob(float(p), float(X)) for p in ps]
        assert np.all(np.diff(values) >= -1e-15)
    for p in ps[1:]:
        values = [match_prob(float(p), float(X)) for X in Xs]
        assert np.all(np.diff(values) >= -1e-15)
        apps = [expected_apps(float(p), float(X)) for X in Xs]
        assert np.all(np.diff(apps) >= -1e-12)


@pytest.mark.parametrize("p", [0.0, 1.0])
@pytest.mark.parametrize("p_low", [0.0, 1.0])
def test_boundary_probabilities_are_finite(p, p_low):
    for y in range(4):
        assert math.isfinite(utility(y, p, p_low, 2.0, 3))
    assert math.isfinite(match_prob(p, 2.5))
    assert math.isfinite(expected_apps(p, 2.5))


def test_utility_endpoints():
    p, p_low, v, K = 0.4, 0.7, 3.0, 5
    assert utility(K, p, p_low, v, K) == pytest.approx(v * (1 - (1 - p) ** K))
    assert utility(0, p, p_low, v, K) == pytest.approx(1 - (1 - p_low) ** K)
    assert utility(1, 1.0, p_low, 2.0, K) == pytest.approx(2.0)


def test_utility_with_certain_low_application():
    assert utility(1, 0.3, 1.0, 2.0, 3) == pytest.approx(2.0 * 0.3 + 0.7)


def test_utility_closed_form():
    p, p_low, v, K = 0.25, 0.6, 1.8, 6
    for y in range(K + 1):
        expected = v - (v - 1) * (1 - p) ** y - (1 - p_low) ** K * ((1 - p) / (1 - p_low)) ** y
        assert utility(y, p, p_low, v, K) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("p, p_low", [(0.1, 0.5), (0.3, 0.35), (0.6, 0.95)])
@pytest.mark.parametrize("v", [1.001, 2.0, 10.0])
def test_utility_strictly_concave(p, p_low, v):
    K = 8
    f = [utility(y, p, p_low, v, K) for y in range(K + 1)]
    second = np.diff(f, n=2)
    assert np.all(second < 0)


def test_utility_rejects_y_outside_list():
    with pytest.raises(DomainError):
        utility(4, 0.5, 0.5, 2.0, 3)


@pytest.mark.parametrize("k", [0, 1, 3])
def test_marginal_gain_is_scaled_utility_step(k):
    p, p_low, v, K = 0.35, 0.55, 1.7, 4
    step = utility(k + 1, p, p_low, v, K) - utility(k, p, p_low, v, K)
    assert marginal_gain(k, p, p_low, v, K) == pytest.approx(step / (1 - p) ** k)


def test_hit_prob_edges():
    assert hit_prob(0.5, 0) == 0.0
    assert hit_prob(0.0, 5) == 0.0
    assert hit_prob(1.0, 2) == 1.0
    assert hit_prob(0.5, 3) == pytest.approx(0.875)
