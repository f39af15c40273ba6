from typing import Tuple, TypeAlias

Probability: TypeAlias = float


class Solver:
    # balance residual of a single pool
    POOL_EPSILON: float = 1e-15
    POOL_XTOL: float = 1e-15
    POOL_MAX_ITER: int = 200
    POOL_RESIDUAL_TOL: float = 1e-12
    POOL_SCAN_POINTS: int = 25

    # below this p, expected_apps switches to its series expansion
    SERIES_THRESHOLD: float = 1e-8

    # indifference function g
    LEFT_LIMIT_STEP: float = 1e-9
    STRATEGY_XTOL: float = 1e-12
    STRATEGY_TOL: float = 1e-9
    G_TOL: float = 1e-10
    G_MAX_ITER: int = 200
    MONOTONE_SAMPLES: int = 3
    MONOTONE_TOL: float = 1e-12

    BEST_RESPONSE_TOL: float = 1e-8
    MASS_TOL: float = 1e-12


class Grid:
    K_RANGE: Tuple[int, ...] = tuple(range(1, 11))
    RHO_HIGH: Tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5)
    V_VALUES: Tuple[float, ...] = (1.001, 1.01, 1.05, 1.1, 1.25, 1.5) + tuple(
        2.0 + 0.5 * step for step in range(17)
    )


class Simulation:
    DEFAULT_N: int = 2000
    DEFAULT_TRIALS: int = 200
    DEFAULT_SEED: int = 7
    DEFAULT_PROBE_TRIALS: int = 5000
    MIN_N: int = 100
    MIN_TRIALS: int = 10
    Z_LIMIT: float = 4.0
    PROBE_SIGMAS: float = 2.0
    # above this fill ratio distinct draws use a full permutation
    PERMUTE_RATIO: float = 0.25


class ExitCode:
    OK: int = 0
    VERIFY_FAILED: int = 1
    INVALID: int = 2
    INCONSISTENT: int = 3


JOBS_ENV_VAR: str = "MATCH_JOBS"
CONFIG_SECTION: str = "market"
CSV_FLOAT_FORMAT: str = "%.6f"
