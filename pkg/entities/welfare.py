"""
Social welfare of a profile and the two reference benchmarks.

Every pair formed contributes the sum of both sides' values: ``2v`` for a high
pair, ``v + 1`` for a mixed pair and ``2`` for a low pair.
"""

from __future__ import annotations

import logging
import math
from typing import Mapping, Optional, Union

from core.errors import DomainError
from entities.equilibrium import solve_market
from entities.market import EquilibriumProfile, MarketConfig, WelfareReport
from entities.pool import TierPool, solve_pool

logger = logging.getLogger(__name__)

_CAPTURE = 1.0 - 1.0 / math.e


def welfare_of_profile(
    profile: Union[EquilibriumProfile, Mapping[str, float]], v: float
) -> float:
    """Welfare per unit doctor mass of a profile or of raw ``hh/hl/lh/ll`` masses."""

    masses = profile.masses() if isinstance(profile, EquilibriumProfile) else profile
    return (
        2.0 * v * masses["hh"]
        + (v + 1.0) * (masses["hl"] + masses["lh"])
        + 2.0 * masses["ll"]
    )


def simple_benchmark(config: MarketConfig, slots: int = 1) -> float:
    """Welfare when every doctor sends ``slots`` applications within its own tier.

    The default single application captures ``1 - 1/e`` of each tier; with
    more slots the capture comes from the balanced pool ``D = H``.
    """

    if not config.balanced:
        logger.warning(
            "single in-tier application benchmark assumes balanced tiers, got %s",
            config,
        )
    if slots < 1:
        raise DomainError(f"slots must be a positive integer, got {slots}")

    capture = _CAPTURE
    if slots > 1:
        pool = TierPool(D=1.0, H=1.0, F=1.0, X=float(slots))
        capture = pool.matched(solve_pool(pool))
    return 2.0 * (config.v * config.d_high + config.d_low) * capture


def optimum_benchmark(config: MarketConfig) -> float:
    """Welfare of the max-weight assignment of the masses.

    High pairs are formed first, then the leftover high agents are matched
    across tiers, then low pairs take whatever remains.
    """

    hh = min(config.d_high, config.h_high)
    hl = min(config.d_high - hh, config.h_low)
    lh = min(config.d_low, config.h_high - hh)
    ll = min(config.d_low - lh, config.h_low - hl)
    return welfare_of_profile({"hh": hh, "hl": hl, "lh": lh, "ll": ll}, config.v)


def efficiency_report(
    config: MarketConfig, profile: Optional[EquilibriumProfile] = None
) -> WelfareReport:
    """Nash, SIMPLE and OPTIMUM welfare of a market, solving it when ``profile``
    is not supplied."""

    if profile is None:
        profile = solve_market(config)
    return WelfareReport.from_welfare(
        welfare_of_profile(profile, config.v),
        simple_benchmark(config),
        optimum_benchmark(config),
    )


def k1_welfare(v: float, r: float, x: float) -> float:
    """Equilibrium welfare at ``K = 1`` when high doctors apply high and a
    fraction ``x`` of low doctors reaches."""

    if not (0 <= x <= 1 and r >= 0):
        raise DomainError(f"need 0 <= x <= 1 and r >= 0, got x={x}, r={r}")
    d_high = 1.0 / (1.0 + r)
    return d_high * (
        2.0 * v * _CAPTURE
        + (v + 1.0) * -math.expm1(-x * r) / math.e
        + 2.0 * r * -math.expm1(-(1.0 - x))
    )


def simple_ratio_floor() -> float:
    return math.e / (2.0 * (math.e - 1.0))


def anarchy_floor() -> float:
    return 0.5
