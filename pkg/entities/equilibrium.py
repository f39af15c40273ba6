"""
Symmetric equilibrium of each doctor tier.

A tier's strategy is characterized by the indifference function ``g(X)``: the
advantage of making one more application high, given that the whole tier plays
``X``. An equilibrium is a point where ``g`` crosses zero, either inside an
integer interval (mixed) or by jumping below zero at an integer (pure). Close
to ``v = 1`` with long lists ``g`` can rise inside an interval and the scan
finds three; the one with the most high applications is reported.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from core.errors import ConvergenceError, DomainError, InconsistencyError
from core.settings import Solver
from entities.kernels import marginal_gain, utility
from entities.market import (
    EquilibriumProfile,
    MarketConfig,
    StageOutcome,
    Strategy,
    StrategyKind,
)
from entities.pool import high_stage, low_stage

logger = logging.getLogger(__name__)

IndifferenceFunction = Callable[[float], float]


def _interval_of(X: float, K: int) -> int:
    return min(int(math.floor(X)), K - 1)


def _clamp(X: float, K: int) -> float:
    return min(max(X, 0.0), float(K))


def g_high(X: float, config: MarketConfig) -> float:
    """Indifference function of the high tier, right-continuous at integers."""

    X = _clamp(X, config.K)
    stage = high_stage(config, Strategy(X, config.K))
    return marginal_gain(
        _interval_of(X, config.K), stage.p_high, stage.p_low, config.v, config.K
    )


def g_low(X: float, config: MarketConfig, availability: StageOutcome) -> float:
    """Indifference function of the low tier, given the high stage's leftovers."""

    X = _clamp(X, config.K)
    stage = low_stage(config, Strategy(X, config.K), availability)
    return marginal_gain(
        _interval_of(X, config.K), stage.p_high, stage.p_low, config.v, config.K
    )


def g_boundary(config: MarketConfig, availability: Optional[StageOutcome] = None) -> float:
    """All-high margin ``v * p(K) - p'(K)`` of the high tier, or of the low tier
    when ``availability`` is given. Listing only high hospitals is an equilibrium
    exactly when this is nonnegative.
    """

    if availability is None:
        return g_high(float(config.K), config)
    return g_low(float(config.K), config, availability)


def _check_decreasing(
    left: float, right: float, samples: Sequence[float], strict: bool
) -> None:
    for before, after in zip(samples, samples[1:]):
        if after > before + Solver.MONOTONE_TOL:
            message = (
                f"indifference function not decreasing on [{left}, {right}]: "
                f"{list(samples)}"
            )
            if strict:
                raise InconsistencyError(message, samples=list(samples))
            logger.warning(message)
            return


def _classify(root: float, K: int) -> Strategy:
    nearest = round(root)
    if abs(root - nearest) <= Solver.STRATEGY_TOL:
        return Strategy.pure(int(nearest), K)
    return Strategy(root, K)


def _crosses(before: float, after: float) -> bool:
    return (before > 0 and after <= 0) or (before < 0 and after >= 0)


def _bisect_root(
    g: IndifferenceFunction,
    left: float,
    right: float,
    g_left: float,
    g_right: float,
    k: int,
) -> float:
    try:
        root = bisect(
            g, left, right, xtol=Solver.STRATEGY_XTOL, maxiter=Solver.G_MAX_ITER
        )
    except RuntimeError as error:
        raise ConvergenceError(str(error), interval=k) from error

    residual = g(root)
    scale = max(1.0, abs(g_left), abs(g_right))
    if abs(residual) > Solver.G_TOL * scale:
        raise ConvergenceError(
            f"indifference residual {residual:.3e} above tolerance",
            interval=k,
            residual=residual,
        )
    return root


def tier_equilibria(
    g: IndifferenceFunction, K: int, strict: bool = False
) -> List[Strategy]:
    """Every symmetric equilibrium of a tier, in increasing order of ``X``.

    A pure ``X = k`` qualifies when ``g`` jumps from positive to nonpositive at
    ``k``; ``X = 0`` when ``g(0) <= 0``; ``X = K`` when the left limit at ``K``
    is positive. A mixed strategy qualifies wherever ``g`` changes sign inside
    an interval, in either direction.
    """

    found: List[Strategy] = []
    left_limit = math.inf

    for k in range(K):
        right = k + 1 - Solver.LEFT_LIMIT_STEP
        points = np.linspace(float(k), right, Solver.MONOTONE_SAMPLES + 2)
        samples = [g(float(X)) for X in points]
        _check_decreasing(float(k), right, samples, strict)

        if samples[0] <= 0 < left_limit:
            logger.debug("pure equilibrium at X = %d (g = %.3e)", k, samples[0])
            found.append(Strategy.pure(k, K))

        for (a, g_a), (b, g_b) in zip(
            zip(points, samples), zip(points[1:], samples[1:])
        ):
            if not _crosses(g_a, g_b):
                continue
            root = _bisect_root(g, float(a), float(b), g_a, g_b, k)
            logger.debug("indifference root X = %.12f in [%d, %d)", root, k, k + 1)
            found.append(_classify(root, K))

        left_limit = samples[-1]

    if left_limit > 0:
        found.append(Strategy.pure(K, K))

    distinct: List[Strategy] = []
    for strategy in sorted(found, key=lambda s: s.X):
        if not distinct or strategy.X - distinct[-1].X > Solver.STRATEGY_TOL:
            distinct.append(strategy)
    return distinct


def solve_tier(
    g: IndifferenceFunction, K: int, strict: bool = False
) -> Tuple[Strategy, StrategyKind]:
    """Finds the equilibrium strategy of a tier.

    Parameters
    ----------
    g: :class:`Callable[[float], float]`
        The tier's indifference function on ``[0, K]``.

    K: :class:`int`
        List length.

    strict: :class:`bool`, default `False`
        Raises instead of logging when ``g`` is found increasing inside an
        integer interval, or when the scan finds more than one equilibrium.

    Returns
    -------
    Tuple[:class:`Strategy`, :class:`StrategyKind`]
        The equilibrium strategy and whether it is pure or mixed. When several
        equilibria exist, the one with the most high applications.

    Raises
    ------
    :exc:`InconsistencyError`
        Raised in strict mode when the monotone-decrease check or the
        uniqueness scan fails, and always when no equilibrium is found.

    :exc:`ConvergenceError`
        Raised when a bracketed root cannot be solved to tolerance.
    """

    equilibria = tier_equilibria(g, K, strict)
    if not equilibria:
        raise InconsistencyError(f"no equilibrium found on [0, {K}]", K=K)

    if len(equilibria) > 1:
        values = [round(strategy.X, 6) for strategy in equilibria]
        message = f"several equilibria {values}"
        if strict:
            raise InconsistencyError(message, equilibria=values)
        logger.warning("%s, taking X = %g", message, values[-1])

    strategy = equilibria[-1]
    return strategy, strategy.kind


def solve_high_tier(config: MarketConfig, strict: bool = False) -> Tuple[Strategy, StrategyKind]:
    return solve_tier(lambda X: g_high(X, config), config.K, strict)


def _verify_best_response(
    tier: str, strategy: Strategy, stage: StageOutcome, config: MarketConfig
) -> None:
    payoffs = [
        utility(j, stage.p_high, stage.p_low, config.v, config.K)
        for j in range(config.K + 1)
    ]
    best = max(payoffs)
    k = strategy.k

    if strategy.kind is StrategyKind.MIXED:
        if abs(payoffs[k] - payoffs[k + 1]) >= Solver.BEST_RESPONSE_TOL:
            raise InconsistencyError(
                f"{tier} tier not indifferent between {k} and {k + 1} high applications",
                payoffs=payoffs,
            )
    if payoffs[k] < best - Solver.BEST_RESPONSE_TOL:
        raise InconsistencyError(
            f"{tier} tier strategy {strategy.X} is not a best response",
            payoffs=payoffs,
        )


def solve_market(config: MarketConfig, strict: bool = False) -> EquilibriumProfile:
    """Solves the high tier, fixes its allocation, then solves the low tier.

    Raises
    ------
    :exc:`InconsistencyError`
        Raised when a solved strategy fails the best-response check over every
        pure strategy ``j`` in ``0..K``.
    """

    X_high, _ = solve_high_tier(config, strict)
    stage_high = high_stage(config, X_high)

    X_low, _ = solve_tier(lambda X: g_low(X, config, stage_high), config.K, strict)
    stage_low = low_stage(config, X_low, stage_high)

    _verify_best_response("high", X_high, stage_high, config)
    _verify_best_response("low", X_low, stage_low, config)

    logger.debug(
        "solved v=%g K=%d d_high=%g: X_high=%.6f X_low=%.6f",
        config.v,
        config.K,
        config.d_high,
        X_high.X,
        X_low.X,
    )
    return EquilibriumProfile(X_high, X_low, stage_high, stage_low)


def _saturation(t: float) -> float:
    # (1 - e^-t) / t, continuous at 0
    if abs(t) < Solver.SERIES_THRESHOLD:
        return 1.0 - 0.5 * t
    return -math.expm1(-t) / t


def k1_reach_acceptance(x: float, r: float) -> float:
    """Acceptance of a low doctor's high application at ``K = 1`` when a fraction
    ``x`` of low doctors reaches and every high doctor applies high."""

    if not (0 <= x <= 1 and r >= 0):
        raise DomainError(f"need 0 <= x <= 1 and r >= 0, got x={x}, r={r}")
    return _saturation(x * r) / math.e


def k1_low_acceptance(x: float) -> float:
    """Acceptance of a low doctor's low application at ``K = 1``."""

    if not 0 <= x <= 1:
        raise DomainError(f"need 0 <= x <= 1, got x={x}")
    return _saturation(1.0 - x)


def critical_v(x: float, r: float) -> float:
    """The high value that makes ``X_low = x`` an interior equilibrium at ``K = 1``."""

    if not (0 < x < 1):
        raise DomainError(f"interior mixing fraction must lie in (0, 1), got {x}", x=x)
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}", r=r)
    return k1_low_acceptance(x) / k1_reach_acceptance(x, r)


def reach_threshold() -> float:
    """Above this ``v``, balanced ``K = 1`` markets have low doctors reaching."""

    return math.e - 1.0
