from __future__ import annotations

import argparse
import itertools
import logging
import math
from typing import Any, Dict, Iterable, List, Tuple

import pandas as pd

from commands.common import OUT_KEYS, add_out_argument, write_csv
from core import Command
from core.errors import BaseError, ConfigError
from core.presets import TABLE1, TABLE1_K_RANGE, TABLE1_RHO_HIGH, TABLE1_V_VALUES
from core.settings import ExitCode, Grid
from core.utils import fan_out, parse_float_list, parse_k_range, resolve_jobs
from entities.equilibrium import solve_market
from entities.market import MarketConfig
from entities.welfare import efficiency_report, simple_benchmark

logger = logging.getLogger(__name__)

SWEEP_COLUMNS: Tuple[str, ...] = (
    "v",
    "K",
    "rho_high",
    "x_high",
    "x_low",
    "w_simple",
    "w_nash",
    "ratio_simple",
    "ratio_opt",
    "status",
)
PUBLISHED_COLUMNS: Tuple[str, ...] = (
    "published_x_high",
    "published_x_low",
    "published_w_simple",
    "published_w_nash",
)

GridPoint = Tuple[float, int, float]


def sweep_point(point: GridPoint) -> Dict[str, Any]:
    """Solves one grid point; failures become a row carrying the error message."""

    v, K, rho_high = point
    row: Dict[str, Any] = dict(zip(SWEEP_COLUMNS, (v, K, rho_high)))
    try:
        config = MarketConfig.from_rho(v, K, rho_high)
        profile = solve_market(config)
        report = efficiency_report(config, profile)
    except BaseError as error:
        logger.debug("grid point %s failed: %s", point, error)
        row.update({column: math.nan for column in SWEEP_COLUMNS[3:-1]})
        row["status"] = str(error)
        return row

    row.update(
        x_high=profile.X_high.X,
        x_low=profile.X_low.X,
        w_simple=report.w_simple,
        w_nash=report.w_nash,
        ratio_simple=report.ratio_nash_simple,
        ratio_opt=report.ratio_nash_opt,
        status="ok",
    )
    return row


def run_grid(
    v_values: Iterable[float],
    k_values: Iterable[int],
    rho_values: Iterable[float],
    jobs: int = 1,
) -> pd.DataFrame:
    """Solves every grid point, rows ordered by ``(v, K, rho_high)``."""

    points: List[GridPoint] = list(
        itertools.product(sorted(v_values), sorted(k_values), sorted(rho_values))
    )
    rows = fan_out(sweep_point, points, jobs)
    return pd.DataFrame(rows, columns=list(SWEEP_COLUMNS))


class Sweep(Command):
    name = "sweep"
    help = "solve a grid of markets and write one CSV row per point"
    config_keys = ("v_list", "k_range", "rho_list") + OUT_KEYS

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--v-list", default=",".join(str(v) for v in Grid.V_VALUES))
        parser.add_argument(
            "--k-range", default=f"{Grid.K_RANGE[0]}-{Grid.K_RANGE[-1]}"
        )
        parser.add_argument(
            "--rho-list", default=",".join(str(rho) for rho in Grid.RHO_HIGH)
        )
        add_out_argument(parser)

    def run(self, args: argparse.Namespace) -> None:
        v_values = parse_float_list(args.v_list)
        k_values = parse_k_range(str(args.k_range))
        rho_values = parse_float_list(args.rho_list)
        for v in v_values:
            if not v > 1:
                raise ConfigError("v must exceed 1")

        frame = run_grid(v_values, k_values, rho_values, resolve_jobs(args.jobs))
        write_csv(frame, args.out)

        solved = int((frame["status"] == "ok").sum())
        logger.info("swept %d grid points, %d solved", len(frame), solved)
        if solved == 0:
            self.manager.exit(ExitCode.INCONSISTENT)


def table1_frame(jobs: int = 1) -> pd.DataFrame:
    """The published grid solved afresh, next to the published values.

    Here ``w_simple`` lets each doctor use all ``K`` slots in-tier, the way the
    published column does.
    """

    frame = run_grid(TABLE1_V_VALUES, TABLE1_K_RANGE, TABLE1_RHO_HIGH, jobs)
    frame["w_simple"] = [
        simple_benchmark(MarketConfig.from_rho(float(v), int(K), float(rho)), slots=int(K))
        for v, K, rho in zip(frame["v"], frame["K"], frame["rho_high"])
    ]
    published = [
        TABLE1[(float(v), int(K))][TABLE1_RHO_HIGH.index(float(rho))]
        for v, K, rho in zip(frame["v"], frame["K"], frame["rho_high"])
    ]
    for index, column in enumerate(PUBLISHED_COLUMNS):
        frame[column] = [row[index] for row in published]
    return frame[list(SWEEP_COLUMNS[:7] + PUBLISHED_COLUMNS)]


class Table1(Command):
    name = "table1"
    help = "solve the published equilibrium grid and compare"
    config_keys = OUT_KEYS

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_out_argument(parser)

    def run(self, args: argparse.Namespace) -> None:
        frame = table1_frame(resolve_jobs(args.jobs))
        write_csv(frame, args.out)

        gaps = (frame["w_nash"] - frame["published_w_nash"]).abs()
        logger.info(
            "table1: %d rows, largest w_nash gap %.4f", len(frame), float(gaps.max())
        )
