"""
Domain types of the two-tier short-list matching market.

All masses are normalized so that the total doctor mass is 1; every welfare
figure is therefore a value per unit doctor mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

from core.errors import ConfigError
from core.settings import Solver


class StrategyKind(str, Enum):
    PURE = "Pure"
    MIXED = "Mixed"


@dataclass(frozen=True)
class MarketConfig:
    """All primitives of a market.

    Parameters
    ----------
    v: :class:`float`
        Value of a high match. A low match is worth 1.

    K: :class:`int`
        Length of the submitted lists.

    d_high, d_low: :class:`float`
        Doctor masses per tier, summing to 1.

    h_high, h_low: :class:`Optional[float]`
        Hospital masses per tier. Default to the doctor masses (balanced tiers).
    """

    v: float
    K: int
    d_high: float
    d_low: float
    h_high: Optional[float] = None
    h_low: Optional[float] = None

    def __post_init__(self) -> None:
        if self.h_high is None:
            object.__setattr__(self, "h_high", self.d_high)
        if self.h_low is None:
            object.__setattr__(self, "h_low", self.d_low)

        if not math.isfinite(self.v) or self.v <= 1:
            raise ConfigError("v must exceed 1", config=self)
        if isinstance(self.K, bool) or not isinstance(self.K, int) or self.K < 1:
            raise ConfigError("K must be a positive integer", config=self)
        if self.d_high < 0 or self.d_low < 0:
            raise ConfigError("doctor masses must be nonnegative", config=self)
        if abs(self.d_high + self.d_low - 1.0) > Solver.MASS_TOL:
            raise ConfigError("doctor masses must sum to 1", config=self)
        if not (self.h_high > 0 and self.h_low > 0):
            raise ConfigError("hospital masses must be positive", config=self)

    @classmethod
    def from_rho(
        cls,
        v: float,
        K: int,
        rho_high: float,
        *,
        h_high: Optional[float] = None,
        h_low: Optional[float] = None,
    ) -> MarketConfig:
        """Builds a config from the share of high doctors."""

        if not 0 <= rho_high <= 1:
            raise ConfigError("rho-high must lie in [0, 1]")
        if rho_high in (0, 1) and (h_high is None or h_low is None):
            # balanced tiers would leave one hospital tier empty
            raise ConfigError(
                "rho-high must lie strictly between 0 and 1 unless both hospital "
                "masses are given"
            )
        return cls(v, K, rho_high, 1.0 - rho_high, h_high, h_low)

    @classmethod
    def from_ratio(cls, v: float, K: int, r: float) -> MarketConfig:
        """Builds a balanced config with r low doctors per high doctor."""

        if r < 0:
            raise ConfigError("r must be nonnegative")
        return cls(v, K, 1.0 / (1.0 + r), r / (1.0 + r))

    @property
    def r(self) -> float:
        return self.d_low / self.d_high if self.d_high > 0 else math.inf

    @property
    def balanced(self) -> bool:
        return (
            abs(self.h_high - self.d_high) <= Solver.MASS_TOL
            and abs(self.h_low - self.d_low) <= Solver.MASS_TOL
        )

    def replace(self, **changes) -> MarketConfig:
        values = {
            "v": self.v,
            "K": self.K,
            "d_high": self.d_high,
            "d_low": self.d_low,
            "h_high": self.h_high,
            "h_low": self.h_low,
        }
        values.update(changes)
        return MarketConfig(**values)

    def to_dict(self) -> Dict[str, float]:
        return {
            "v": self.v,
            "K": self.K,
            "d_high": self.d_high,
            "d_low": self.d_low,
            "h_high": self.h_high,
            "h_low": self.h_low,
        }


@dataclass(frozen=True)
class Strategy:
    """Expected number X of high applications out of K.

    A fraction ``x`` of the tier plays ``(k + 1, K - k - 1)`` and the rest plays
    ``(k, K - k)``, with ``k = floor(X)`` and ``x = X - k``.
    """

    X: float
    K: int

    def __post_init__(self) -> None:
        if not 0 <= self.X <= self.K:
            raise ConfigError(f"strategy {self.X} outside [0, {self.K}]")

    @property
    def k(self) -> int:
        return min(int(math.floor(self.X)), self.K)

    @property
    def x(self) -> float:
        return self.X - self.k

    @property
    def kind(self) -> StrategyKind:
        return StrategyKind.PURE if self.x == 0 else StrategyKind.MIXED

    @classmethod
    def pure(cls, k: int, K: int) -> Strategy:
        return cls(float(k), K)


@dataclass(frozen=True)
class StageOutcome:
    """What one doctor tier produces when its applications are resolved.

    ``p_high`` / ``p_low`` are per-application acceptance probabilities at high
    and low hospitals; ``m_high`` / ``m_low`` the mass of this tier matched to
    each hospital tier; ``free_high`` / ``free_low`` the fraction of each
    hospital tier still unmatched once this stage is over.
    """

    p_high: float
    p_low: float
    m_high: float
    m_low: float
    free_high: float
    free_low: float


@dataclass(frozen=True)
class EquilibriumProfile:
    X_high: Strategy
    X_low: Strategy
    stage_high: StageOutcome
    stage_low: StageOutcome
    kind_high: StrategyKind = field(init=False)
    kind_low: StrategyKind = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind_high", self.X_high.kind)
        object.__setattr__(self, "kind_low", self.X_low.kind)

    @property
    def m_hh(self) -> float:
        return self.stage_high.m_high

    @property
    def m_hl(self) -> float:
        return self.stage_high.m_low

    @property
    def m_lh(self) -> float:
        return self.stage_low.m_high

    @property
    def m_ll(self) -> float:
        return self.stage_low.m_low

    def masses(self) -> Dict[str, float]:
        return {"hh": self.m_hh, "hl": self.m_hl, "lh": self.m_lh, "ll": self.m_ll}


@dataclass(frozen=True)
class WelfareReport:
    w_nash: float
    w_simple: float
    w_opt: float
    ratio_nash_simple: float
    ratio_nash_opt: float

    @classmethod
    def from_welfare(cls, w_nash: float, w_simple: float, w_opt: float) -> WelfareReport:
        return cls(
            w_nash=w_nash,
            w_simple=w_simple,
            w_opt=w_opt,
            ratio_nash_simple=w_nash / w_simple if w_simple > 0 else math.inf,
            ratio_nash_opt=w_nash / w_opt if w_opt > 0 else math.inf,
        )
