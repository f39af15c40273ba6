"""
Flags and output helpers shared by several commands.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Dict, Optional, Tuple

import pandas as pd

from core.errors import ConfigError
from core.settings import CSV_FLOAT_FORMAT, Simulation
from entities.equilibrium import solve_market
from entities.market import EquilibriumProfile, MarketConfig, Strategy
from entities.pool import evaluate_profile

MARKET_KEYS: Tuple[str, ...] = ("v", "k", "rho_high", "hospital_high", "hospital_low")
SIMULATION_KEYS: Tuple[str, ...] = ("n", "trials", "seed")
OUT_KEYS: Tuple[str, ...] = ("out",)


def add_market_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--v", type=float, help="value of a high match")
    parser.add_argument("--k", type=int, help="list length K")
    parser.add_argument(
        "--rho-high",
        type=float,
        help=(
            "share of high doctors, strictly between 0 and 1 unless both "
            "hospital masses are given"
        ),
    )
    parser.add_argument("--hospital-high", type=float, help="high hospital mass")
    parser.add_argument("--hospital-low", type=float, help="low hospital mass")


def add_simulation_arguments(
    parser: argparse.ArgumentParser, trials: int = Simulation.DEFAULT_TRIALS
) -> None:
    parser.add_argument("--n", type=int, default=Simulation.DEFAULT_N)
    parser.add_argument("--trials", type=int, default=trials)
    parser.add_argument("--seed", type=int, default=Simulation.DEFAULT_SEED)


def add_out_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="output file, standard output when omitted")


def market_config_from(args: argparse.Namespace) -> MarketConfig:
    """Builds the config from parsed flags.

    Raises
    ------
    :exc:`ConfigError`
        Raised when a required flag is missing or a value is invalid.
    """

    for flag in ("v", "k", "rho_high"):
        if getattr(args, flag, None) is None:
            raise ConfigError(f"missing --{flag.replace('_', '-')}")
    return MarketConfig.from_rho(
        args.v,
        args.k,
        args.rho_high,
        h_high=args.hospital_high,
        h_low=args.hospital_low,
    )


def check_seed(seed: int) -> None:
    if seed < 0:
        raise ConfigError(f"seed must be nonnegative, got {seed}")


def profile_for(config: MarketConfig, kind: str) -> EquilibriumProfile:
    """The solved equilibrium, or every doctor listing only their own tier."""

    if kind == "simple":
        return evaluate_profile(
            config, Strategy.pure(config.K, config.K), Strategy.pure(0, config.K)
        )
    return solve_market(config)


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: _json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(item) for item in value]
    return value


def write_json(document: Dict[str, Any], out: Optional[str]) -> None:
    text = json.dumps(_json_safe(document), indent=2, sort_keys=False) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as file:
            file.write(text)


def write_csv(frame: pd.DataFrame, out: Optional[str]) -> None:
    """Writes a frame with '.' decimals and LF line endings."""

    options = dict(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    if out is None:
        frame.to_csv(sys.stdout, **options)
    else:
        frame.to_csv(out, encoding="utf-8", **options)
