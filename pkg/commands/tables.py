from __future__ import annotations

import argparse
import logging

import pandas as pd

from commands.common import OUT_KEYS, add_out_argument, write_csv
from core import Command
from core.presets import FIGURE1_K_RANGE, FIGURE1_SERIES, FIGURE1_V, TABLE2_FIXED_V_ROW, TABLE2_ROWS
from entities.equilibrium import critical_v, solve_market
from entities.market import MarketConfig
from entities.welfare import efficiency_report, k1_welfare, simple_benchmark

logger = logging.getLogger(__name__)


def table2_frame() -> pd.DataFrame:
    """SIMPLE against equilibrium welfare at ``K = 1``.

    The fixed-v row is solved directly; every other row places ``v`` at the
    value making its ``x_low`` an interior equilibrium.
    """

    _, r, v, _ = TABLE2_FIXED_V_ROW
    config = MarketConfig.from_ratio(v, 1, r)
    profile = solve_market(config)
    report = efficiency_report(config, profile)
    rows = [(profile.X_low.X, r, v, report.w_simple / report.w_nash)]

    for x, r, _, _ in TABLE2_ROWS:
        v = critical_v(x, r)
        w_simple = simple_benchmark(MarketConfig.from_ratio(v, 1, r))
        rows.append((x, r, v, w_simple / k1_welfare(v, r, x)))

    return pd.DataFrame(rows, columns=["x_low", "r", "v_critical", "ratio_simple_nash"])


def figure1_frame() -> pd.DataFrame:
    """Low-tier equilibrium strategy against K, one column per ratio."""

    frame = pd.DataFrame({"K": list(FIGURE1_K_RANGE)})
    for column, (r, _) in FIGURE1_SERIES.items():
        frame[column] = [
            solve_market(MarketConfig.from_ratio(FIGURE1_V, K, r)).X_low.X
            for K in FIGURE1_K_RANGE
        ]
    return frame


class Table2(Command):
    name = "table2"
    help = "welfare ratio of SIMPLE to equilibrium at K = 1"
    config_keys = OUT_KEYS

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_out_argument(parser)

    def run(self, args: argparse.Namespace) -> None:
        frame = table2_frame()
        write_csv(frame, args.out)
        logger.info(
            "table2: %d rows, ratio range [%.6f, %.6f]",
            len(frame),
            float(frame["ratio_simple_nash"].min()),
            float(frame["ratio_simple_nash"].max()),
        )


class Figure1(Command):
    name = "figure1"
    help = "low-tier equilibrium strategy against K"
    config_keys = OUT_KEYS

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_out_argument(parser)

    def run(self, args: argparse.Namespace) -> None:
        frame = figure1_frame()
        write_csv(frame, args.out)
        logger.info("figure1: %d series over K = 1..%d", len(FIGURE1_SERIES), len(frame))
