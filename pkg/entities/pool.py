"""
Large-market balance equations and the two-stage allocation pipeline.

High doctors are allocated first, then low doctors apply to whatever hospitals
the high stage left free. Within a stage, applications go first to the high
hospital pool; doctors that fail there spill over to the low hospital pool.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.optimize import bisect

from core.errors import ConvergenceError, DomainError
from core.settings import Probability, Solver
from entities.kernels import expected_apps, match_prob, split_strategy
from entities.market import EquilibriumProfile, MarketConfig, StageOutcome, Strategy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TierPool:
    """One doctor population applying to one hospital tier.

    Parameters
    ----------
    D: :class:`float`
        Doctor mass sending applications to the pool.

    H: :class:`float`
        Hospital mass of the tier. Applications land uniformly over all of it.

    F: :class:`float`
        Fraction of the tier still free. Taken hospitals reject automatically.

    X: :class:`float`
        Strategy value; how many applications each doctor may send here.
    """

    D: float
    H: float
    F: float
    X: float

    def __post_init__(self) -> None:
        if self.D < 0 or self.H <= 0 or not 0 <= self.F <= 1 or self.X < 0:
            raise DomainError(f"inadmissible pool {self}", pool=self)

    @property
    def trivial(self) -> bool:
        return self.D == 0 or self.X == 0 or self.F == 0

    def rate(self, p: Probability) -> float:
        """Applications received per hospital of the tier."""

        return self.D * expected_apps(p, self.X) / self.H

    def residual(self, p: Probability) -> float:
        """Matched doctor mass minus matched hospital mass at acceptance ``p``."""

        return self.D * match_prob(p, self.X) - self.F * self.H * -math.expm1(
            -self.rate(p)
        )

    def matched(self, p: Probability) -> float:
        return self.D * match_prob(p, self.X)

    def free_after(self, p: Probability) -> float:
        return self.F * math.exp(-self.rate(p))


def _small_p_answer(pool: TierPool) -> Probability:
    load = pool.D * pool.X / pool.H
    return pool.F * -math.expm1(-load) / load


def solve_pool(pool: TierPool) -> Probability:
    """Solves the balance equation of a pool for the per-application acceptance.

    Returns
    -------
    :class:`float`
        ``p`` with ``|residual(p)| < 1e-12``. A pool nobody applies to, or one
        with no free hospital, returns ``F``.

    Raises
    ------
    :exc:`ConvergenceError`
        Raised when the residual cannot be bracketed or solved to tolerance.
    """

    if pool.trivial:
        return pool.F

    grid = np.geomspace(Solver.POOL_EPSILON, 1.0, Solver.POOL_SCAN_POINTS)
    values = [pool.residual(float(p)) for p in grid]

    if values[0] >= 0:
        return _small_p_answer(pool)
    if values[-1] < 0:
        if -values[-1] <= Solver.POOL_RESIDUAL_TOL:
            return 1.0
        raise ConvergenceError(
            "balance residual negative at p = 1", pool=pool, residual=values[-1]
        )

    brackets = [
        index
        for index in range(len(grid) - 1)
        if values[index] < 0 <= values[index + 1]
    ]
    if len(brackets) > 1:
        logger.warning(
            "balance residual of %s changes sign %d times; taking the largest root",
            pool,
            len(brackets),
        )
    low, high = float(grid[brackets[-1]]), float(grid[brackets[-1] + 1])
    logger.debug("pool %s bracketed in [%g, %g]", pool, low, high)

    try:
        p = bisect(
            pool.residual,
            low,
            high,
            xtol=Solver.POOL_XTOL,
            maxiter=Solver.POOL_MAX_ITER,
        )
    except RuntimeError as error:
        raise ConvergenceError(str(error), pool=pool) from error

    residual = pool.residual(p)
    if abs(residual) >= Solver.POOL_RESIDUAL_TOL:
        raise ConvergenceError(
            f"balance residual {residual:.3e} above tolerance",
            pool=pool,
            residual=residual,
        )
    return p


def resolve_pool(pool: TierPool) -> Tuple[Probability, float, float]:
    """Solves a pool and returns ``(p, matched doctor mass, free fraction after)``."""

    p = solve_pool(pool)
    if pool.trivial:
        return p, 0.0, pool.F
    return p, pool.matched(p), pool.free_after(p)


def spill_over(D: float, X: float, p_high: Probability, K: int) -> Tuple[float, float]:
    """Mass and strategy value of the doctors reaching the low pool.

    Doctors that played ``k + 1`` high applications carry ``K - k - 1`` low
    slots, the others ``K - k``; the pair is itself a mixed strategy value.
    """

    k, x = split_strategy(X)
    miss = 1.0 - p_high
    w_more_high = x * miss ** (k + 1)
    w_fewer_high = (1.0 - x) * miss**k
    weight = w_more_high + w_fewer_high
    if weight <= 0.0:
        return 0.0, 0.0

    X_spill = max(0.0, (K - k - 1) + w_fewer_high / weight)
    return D * weight, min(X_spill, float(K))


def _run_stage(
    D: float,
    strategy: Strategy,
    h_high: float,
    h_low: float,
    free_high: float,
    free_low: float,
    K: int,
) -> StageOutcome:
    high_pool = TierPool(D, h_high, free_high, strategy.X)
    p_high, m_high, free_high_after = resolve_pool(high_pool)

    spill_mass, X_spill = spill_over(D, strategy.X, p_high, K)
    low_pool = TierPool(spill_mass, h_low, free_low, X_spill)
    p_low, m_low, free_low_after = resolve_pool(low_pool)

    return StageOutcome(
        p_high=p_high,
        p_low=p_low,
        m_high=m_high,
        m_low=m_low,
        free_high=free_high_after,
        free_low=free_low_after,
    )


def high_stage(config: MarketConfig, X_high: Strategy) -> StageOutcome:
    """Allocates the high doctors into an empty market."""

    return _run_stage(
        config.d_high, X_high, config.h_high, config.h_low, 1.0, 1.0, config.K
    )


def low_stage(
    config: MarketConfig, X_low: Strategy, availability: StageOutcome
) -> StageOutcome:
    """Allocates the low doctors into the hospitals left free by ``availability``."""

    return _run_stage(
        config.d_low,
        X_low,
        config.h_high,
        config.h_low,
        availability.free_high,
        availability.free_low,
        config.K,
    )


def evaluate_profile(
    config: MarketConfig, X_high: Strategy, X_low: Strategy
) -> EquilibriumProfile:
    """Runs both stages for an arbitrary strategy profile."""

    stage_high = high_stage(config, X_high)
    stage_low = low_stage(config, X_low, stage_high)
    return EquilibriumProfile(X_high, X_low, stage_high, stage_low)
