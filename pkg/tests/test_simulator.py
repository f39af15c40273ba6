import math

import numpy as np
import pytest

from core.errors import ConfigError
from core.utils import resolve_jobs
from entities.equilibrium import solve_market
from entities.market import MarketConfig, Strategy
from entities.pool import evaluate_profile
from entities.simulator import (
    FiniteInstance,
    Matching,
    ProbeReport,
    SubmittedLists,
    best_response_probe,
    estimate,
    expected_quantities,
    find_blocking_pair,
    full_preference_lists,
    run_da,
    sample_lists,
)
from entities.welfare import optimum_benchmark


def _instance(**changes):
    values = dict(n_dh=400, n_dl=600, n_hh=400, n_hl=600, K=3, X_high=3.0, X_low=0.0, v=3.0)
    values.update(changes)
    return FiniteInstance(**values)


def _simple(config):
    return evaluate_profile(config, Strategy.pure(config.K, config.K), Strategy.pure(0, config.K))


def test_counts_round_half_up():
    config = MarketConfig(2.0, 1, 0.125, 0.875)
    instance = FiniteInstance.from_config(config, 1.0, 0.0, n=100)

    assert instance.n_dh == 13
    assert instance.n_hh == 13
    assert instance.n_dl == 88


def test_instance_rejects_overlong_lists():
    with pytest.raises(ConfigError):
        _instance(n_hh=2, X_high=3.0)


def test_sample_lists_follow_pure_strategies():
    instance = _instance()
    lists = sample_lists(instance)
    counts = lists.high_counts(instance)

    assert lists.hospitals.shape == (1000, 3)
    assert np.all(counts[: instance.n_dh] == 3)
    assert np.all(counts[instance.n_dh :] == 0)


def test_sample_lists_entries_distinct():
    lists = sample_lists(_instance(X_high=1.5, X_low=2.0))
    for row in lists.hospitals:
        assert len(set(row.tolist())) == len(row)


def test_sample_lists_mixed_share():
    instance = _instance(X_high=1.5)
    counts = sample_lists(instance).high_counts(instance)[: instance.n_dh]

    assert set(np.unique(counts)) <= {1, 2}
    share = np.mean(counts == 2)
    assert abs(share - 0.5) < 3.0 * math.sqrt(0.25 / instance.n_dh)


def test_sample_lists_key_ranges():
    instance = _instance(X_low=1.0)
    keys = sample_lists(instance).keys

    assert np.all((keys[: instance.n_dh] >= 1.0) & (keys[: instance.n_dh] < 2.0))
    assert np.all((keys[instance.n_dh :] >= 0.0) & (keys[instance.n_dh :] < 1.0))


def test_sample_lists_deterministic_per_seed():
    first = sample_lists(_instance(X_high=2.5))
    second = sample_lists(_instance(X_high=2.5))
    other = sample_lists(_instance(X_high=2.5, seed=8))

    np.testing.assert_array_equal(first.hospitals, second.hospitals)
    np.testing.assert_array_equal(first.keys, second.keys)
    assert not np.array_equal(first.hospitals, other.hospitals)


def _tiny(n_dh, K=1):
    return FiniteInstance(n_dh=n_dh, n_dl=0, n_hh=1, n_hl=1, K=K, X_high=1.0, X_low=0.0, v=2.0)


def test_da_single_doctor():
    lists = SubmittedLists(np.array([[0]]), np.array([[1.5]]))
    matching = run_da(_tiny(1), lists)

    assert matching.doctor_to_hospital.tolist() == [0]
    assert matching.hospital_to_doctor.tolist() == [0, -1]


def test_da_hospital_keeps_best_key():
    lists = SubmittedLists(np.array([[0], [0]]), np.array([[1.2], [1.7]]))
    matching = run_da(_tiny(2), lists)

    assert matching.doctor_to_hospital.tolist() == [-1, 0]


def test_da_rejected_doctor_moves_down_list():
    lists = SubmittedLists(np.array([[0, 1], [0, 1]]), np.array([[1.2, 1.3], [1.7, 1.1]]))
    matching = run_da(_tiny(2, K=2), lists)

    assert matching.doctor_to_hospital.tolist() == [1, 0]


def test_full_lists_give_assortative_matching():
    instance = FiniteInstance(n_dh=20, n_dl=30, n_hh=20, n_hl=30, K=1, X_high=1.0, X_low=0.0, v=4.0)
    matching = run_da(instance, full_preference_lists(instance))

    assert matching.pair_counts(instance) == {"hh": 20, "hl": 0, "lh": 0, "ll": 30}
    expected = optimum_benchmark(MarketConfig(4.0, 1, 0.4, 0.6))
    assert matching.welfare(instance) == pytest.approx(expected)


@pytest.mark.parametrize("X_high, X_low", [(2.0, 0.5), (1.5, 1.0), (3.0, 0.0)])
def test_da_result_is_stable(X_high, X_low):
    instance = FiniteInstance(
        n_dh=80, n_dl=120, n_hh=80, n_hl=120, K=3, X_high=X_high, X_low=X_low, v=3.0
    )
    lists = sample_lists(instance)
    assert find_blocking_pair(instance, lists, run_da(instance, lists)) is None


def test_blocking_pair_detected():
    lists = SubmittedLists(np.array([[0], [0]]), np.array([[1.2], [1.7]]))
    unstable = Matching(np.array([0, -1]), np.array([0, -1]))

    assert find_blocking_pair(_tiny(2), lists, unstable) == (1, 0)


def test_da_independent_of_entry_order():
    instance = _instance(X_high=1.5, X_low=1.0)
    lists = sample_lists(instance)
    order = np.random.default_rng(3).permutation(instance.n_doctors)

    forward = run_da(instance, lists)
    shuffled = run_da(instance, lists, order=order)
    np.testing.assert_array_equal(forward.doctor_to_hospital, shuffled.doctor_to_hospital)


def test_estimate_deterministic(market):
    config = market(3.0, 2, 0.3)
    profile = solve_market(config)

    first = estimate(config, profile, n=200, trials=10, seed=11)
    second = estimate(config, profile, n=200, trials=10, seed=11)
    assert first == second


@pytest.mark.parametrize("n, trials", [(50, 20), (200, 5)])
def test_estimate_rejects_small_runs(market, n, trials):
    config = market(3.0, 1, 0.3)
    with pytest.raises(ConfigError):
        estimate(config, solve_market(config), n=n, trials=trials)


def test_single_in_tier_application_capture(market):
    config = market(2.0, 1, 0.5)
    report = estimate(config, _simple(config), n=1000, trials=20)

    assert report.mean["match_high"] == pytest.approx(1.0 - 1.0 / math.e, abs=0.01)
    assert report.mean["match_low"] == pytest.approx(1.0 - 1.0 / math.e, abs=0.01)


def test_simulated_welfare_of_high_value_market(market):
    config = market(10.0, 1, 0.5)
    report = estimate(config, solve_market(config), n=2000, trials=40)

    assert report.mean["welfare"] == pytest.approx(7.60, abs=0.06)


def test_stderr_shrinks_with_trials(market):
    config = market(3.0, 1, 0.3)
    profile = solve_market(config)

    few = estimate(config, profile, n=200, trials=200)
    many = estimate(config, profile, n=200, trials=400)
    assert 0.55 <= many.stderr["welfare"] / few.stderr["welfare"] <= 0.9


ORACLE_MARKETS = [
    (10.0, 1, 0.5, "nash"),
    (3.0, 3, 0.3, "nash"),
    (1.5, 2, 0.1, "nash"),
    (3.0, 4, 0.5, "nash"),
    (10.0, 2, 0.5, "nash"),
    (3.0, 1, 0.3, "simple"),
]


def _profile(config, kind):
    return _simple(config) if kind == "simple" else solve_market(config)


@pytest.mark.slow
@pytest.mark.parametrize("v, K, rho, kind", ORACLE_MARKETS)
def test_large_market_oracle(market, v, K, rho, kind):
    config = market(v, K, rho)
    profile = _profile(config, kind)
    analytic = expected_quantities(config, profile)
    report = estimate(config, profile, n=2000, trials=200)

    for name, value in analytic.items():
        gap = report.mean[name] - value
        if report.stderr[name] > 0:
            assert abs(gap) / report.stderr[name] <= 4.0, name
        if name != "welfare":
            assert abs(gap) < 0.015, name


def _spread(report, analytic):
    # root mean square distance of a single market from the large-market masses
    return max(
        math.hypot(
            report.stderr[name] * math.sqrt(report.trials),
            report.mean[name] - analytic[name],
        )
        for name in ("hh", "hl", "lh", "ll")
    )


@pytest.mark.slow
def test_gap_shrinks_with_market_size(market):
    config = market(3.0, 3, 0.3)
    profile = solve_market(config)
    analytic = expected_quantities(config, profile)

    reports = [estimate(config, profile, n=n, trials=100) for n in (250, 500, 1000, 2000)]
    spreads = [_spread(report, analytic) for report in reports]

    assert all(a > b for a, b in zip(spreads, spreads[1:])), spreads
    for name in ("hh", "hl", "lh", "ll"):
        assert abs(reports[-1].mean[name] - analytic[name]) < 0.015, name


def test_probe_finds_all_high_best_response(market):
    config = market(10.0, 1, 0.5)
    profile = solve_market(config)
    report = best_response_probe(config, profile, n=300, trials=300)

    assert report.payoffs["high"].shape == (300, 2)
    for tier, strategy in (("high", profile.X_high), ("low", profile.X_low)):
        assert report.best(tier) == 1
        assert report.consistent(tier, strategy)


def test_probe_needs_hospitals_of_both_tiers(market):
    config = market(10.0, 1, 0.5, h_high=0.999, h_low=0.001)
    with pytest.raises(ConfigError):
        best_response_probe(config, _simple(config), n=100, trials=10)


@pytest.mark.slow
@pytest.mark.parametrize(
    "v, K, rho", [(3.0, 3, 0.3), (10.0, 1, 0.5), (10.0, 2, 0.5), (1.5, 2, 0.1)]
)
def test_equilibrium_is_empirical_best_response(market, v, K, rho):
    config = market(v, K, rho)
    profile = solve_market(config)
    report = best_response_probe(config, profile, n=2000, trials=5000, jobs=resolve_jobs())

    assert report.consistent("high", profile.X_high)
    assert report.consistent("low", profile.X_low)


def _probe_report(column_two):
    payoffs = np.zeros((4, 3))
    payoffs[:, 2] = column_two
    return ProbeReport(K=2, trials=4, payoffs={"high": payoffs})


def test_probe_consistency_allows_noise():
    report = _probe_report(np.array([1.0, -1.0, 1.0, -1.0]) + 0.01)

    assert report.best("high") == 2
    assert report.consistent("high", Strategy(0.0, 2))


def test_probe_consistency_flags_clear_gap():
    report = _probe_report(np.full(4, 5.0))

    assert not report.consistent("high", Strategy(0.0, 2))
    assert report.consistent("high", Strategy(1.0, 2))
