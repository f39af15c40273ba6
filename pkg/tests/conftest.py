from __future__ import annotations

import math
from typing import Callable

import pytest

from entities.market import MarketConfig

E_RATIO = math.e / (math.e - 1.0)


@pytest.fixture
def market() -> Callable[..., MarketConfig]:
    """Balanced market factory: ``market(v, K, rho_high)``."""

    def build(v: float, K: int, rho_high: float, **hospitals: float) -> MarketConfig:
        return MarketConfig.from_rho(v, K, rho_high, **hospitals)

    return build


@pytest.fixture
def shortage() -> Callable[[float, float, int], MarketConfig]:
    """Only high doctors, with a fraction ``alpha`` of high hospitals."""

    def build(v: float, alpha: float, K: int = 5) -> MarketConfig:
        return MarketConfig.from_rho(v, K, 1.0, h_high=alpha, h_low=1.0 - alpha)

    return build
