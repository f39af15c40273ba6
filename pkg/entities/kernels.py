"""
Elementary probability and utility kernels of the large-market model.

Every function here is a pure function of scalar inputs. Strategy values are
plain floats ``X = k + x`` so the kernels can be evaluated inside root finders.
"""

from __future__ import annotations

import math
from typing import Tuple

from core.errors import DomainError
from core.settings import Probability, Solver


def _check_probability(name: str, p: float) -> None:
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {p}", value=p)


def _check_slots(X: float) -> None:
    if not (math.isfinite(X) and X >= 0.0):
        raise DomainError(f"strategy value must be nonnegative, got {X}", value=X)


def split_strategy(X: float) -> Tuple[int, float]:
    """Splits ``X`` into the integer part ``k`` and the mixture weight ``x``."""

    k = int(math.floor(X))
    return k, X - k


def hit_prob(p: Probability, k: int) -> Probability:
    """Probability that at least one of ``k`` independent applications succeeds."""

    if k <= 0 or p <= 0.0:
        return 0.0
    if p >= 1.0:
        return 1.0
    return -math.expm1(k * math.log1p(-p))


def match_prob(p: Probability, X: float) -> Probability:
    """Probability that a doctor playing ``X`` ends up matched in the pool.

    Parameters
    ----------
    p: :class:`float`
        Acceptance probability of a single application.

    X: :class:`float`
        Strategy value; the fraction ``x`` sends ``k + 1`` applications and the
        rest sends ``k``.

    Raises
    ------
    :exc:`DomainError`
        Raised when ``p`` or ``X`` is out of range.
    """

    _check_probability("p", p)
    _check_slots(X)

    k, x = split_strategy(X)
    if x == 0.0:
        return hit_prob(p, k)
    return x * hit_prob(p, k + 1) + (1.0 - x) * hit_prob(p, k)


def _apps_series(p: Probability, k: int) -> float:
    # (1 - (1 - p)^k) / p = k - k(k - 1)p / 2 + O(p^2)
    return k - 0.5 * k * (k - 1) * p


def expected_apps(p: Probability, X: float) -> float:
    """Expected number of applications a doctor playing ``X`` actually sends.

    Applications are sent in order until one is accepted, so this is
    ``match_prob(p, X) / p``; the limit at ``p -> 0`` is ``X`` itself.
    """

    _check_probability("p", p)
    _check_slots(X)

    k, x = split_strategy(X)
    if p < Solver.SERIES_THRESHOLD:
        return x * _apps_series(p, k + 1) + (1.0 - x) * _apps_series(p, k)
    return match_prob(p, X) / p


def utility(y: int, p: Probability, p_low: Probability, v: float, K: int) -> float:
    """Expected value of listing ``y`` high hospitals followed by ``K - y`` low ones.

    The low applications are only reached when every high one fails, so
    ``f(y) = v(1 - (1-p)^y) + (1-p)^y (1 - (1-p_low)^(K-y))``, which stays finite
    for ``p_low = 1``.
    """

    if not (0 <= y <= K):
        raise DomainError(f"y must lie in [0, {K}], got {y}", value=y)
    _check_probability("p", p)
    _check_probability("p_low", p_low)

    miss_high = (1.0 - p) ** y
    high_value = v * (1.0 - miss_high)
    if y == K:
        return high_value
    return high_value + miss_high * hit_prob(p_low, K - y)


def marginal_gain(k: int, p: Probability, p_low: Probability, v: float, K: int) -> float:
    """Value of turning the (k+1)-th slot from a low into a high application.

    Equals ``(f(k + 1) - f(k)) / (1 - p)^k``; ``k`` must lie in ``[0, K - 1]``.
    """

    if not (0 <= k < K):
        raise DomainError(f"k must lie in [0, {K - 1}], got {k}", value=k)

    return p * v + (1.0 - p) * hit_prob(p_low, K - k - 1) - hit_prob(p_low, K - k)
