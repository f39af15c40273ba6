from __future__ import annotations

import argparse
import logging
import math
from typing import Dict, List

import pandas as pd

from commands.common import (
    MARKET_KEYS,
    OUT_KEYS,
    SIMULATION_KEYS,
    add_market_arguments,
    add_out_argument,
    add_simulation_arguments,
    check_seed,
    market_config_from,
    profile_for,
    write_csv,
    write_json,
)
from core import Command
from core.settings import ExitCode, Simulation
from core.utils import resolve_jobs
from entities.equilibrium import solve_market
from entities.simulator import (
    QUANTITIES,
    TIERS,
    SimReport,
    best_response_probe,
    estimate,
    expected_quantities,
)

logger = logging.getLogger(__name__)


def _add_profile_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--profile", choices=("nash", "simple"), default="nash")


def z_score(analytic: float, empirical: float, stderr: float) -> float:
    gap = empirical - analytic
    if stderr > 0:
        return gap / stderr
    return 0.0 if abs(gap) <= 1e-12 else math.copysign(math.inf, gap)


def comparison_rows(analytic: Dict[str, float], report: SimReport) -> List[Dict[str, float]]:
    return [
        {
            "quantity": name,
            "analytic": analytic[name],
            "empirical": report.mean[name],
            "stderr": report.stderr[name],
            "z": z_score(analytic[name], report.mean[name], report.stderr[name]),
        }
        for name in QUANTITIES
    ]


class Simulate(Command):
    name = "simulate"
    help = "simulate a profile in a finite market and print the estimates as JSON"
    config_keys = MARKET_KEYS + SIMULATION_KEYS + ("profile",) + OUT_KEYS

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_market_arguments(parser)
        add_simulation_arguments(parser)
        _add_profile_argument(parser)
        add_out_argument(parser)

    def run(self, args: argparse.Namespace) -> None:
        config = market_config_from(args)
        check_seed(args.seed)
        profile = profile_for(config, args.profile)

        report = estimate(
            config, profile, args.n, args.trials, args.seed, resolve_jobs(args.jobs)
        )
        write_json(
            {
                "config": config.to_dict(),
                "profile": args.profile,
                "x_high": profile.X_high.X,
                "x_low": profile.X_low.X,
                "n": report.n,
                "trials": report.trials,
                "seed": args.seed,
                "mean": report.mean,
                "stderr": report.stderr,
            },
            args.out,
        )
        logger.info(
            "simulated %d trials at n=%d: welfare %.4f +- %.4f",
            report.trials,
            report.n,
            report.mean["welfare"],
            report.stderr["welfare"],
        )


class Verify(Command):
    name = "verify"
    help = "compare the large-market solution against simulation"
    config_keys = MARKET_KEYS + SIMULATION_KEYS + ("profile",) + OUT_KEYS

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_market_arguments(parser)
        add_simulation_arguments(parser)
        _add_profile_argument(parser)
        add_out_argument(parser)

    def run(self, args: argparse.Namespace) -> None:
        config = market_config_from(args)
        check_seed(args.seed)
        profile = profile_for(config, args.profile)

        report = estimate(
            config, profile, args.n, args.trials, args.seed, resolve_jobs(args.jobs)
        )
        frame = pd.DataFrame(comparison_rows(expected_quantities(config, profile), report))
        write_csv(frame, args.out)

        worst = float(frame["z"].abs().max())
        logger.info("verified %d quantities, largest |z| %.3f", len(frame), worst)
        if worst > Simulation.Z_LIMIT:
            self.manager.exit(ExitCode.VERIFY_FAILED)


class Probe(Command):
    name = "probe"
    help = "estimate a single deviating doctor's payoff for every pure strategy"
    config_keys = MARKET_KEYS + SIMULATION_KEYS + OUT_KEYS

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_market_arguments(parser)
        add_simulation_arguments(parser, trials=Simulation.DEFAULT_PROBE_TRIALS)
        add_out_argument(parser)

    def run(self, args: argparse.Namespace) -> None:
        config = market_config_from(args)
        check_seed(args.seed)
        profile = solve_market(config)

        report = best_response_probe(
            config, profile, args.n, args.trials, args.seed, resolve_jobs(args.jobs)
        )
        strategies = {"high": profile.X_high, "low": profile.X_low}
        document = {"config": config.to_dict(), "n": args.n, "trials": report.trials}
        for tier in TIERS:
            document[tier] = {
                "x": strategies[tier].X,
                "mean": report.mean(tier).tolist(),
                "stderr": report.stderr(tier).tolist(),
                "best": report.best(tier),
                "consistent": report.consistent(tier, strategies[tier]),
            }
        write_json(document, args.out)

        consistent = all(document[tier]["consistent"] for tier in TIERS)
        logger.info(
            "probed %d trials: best high j=%d, best low j=%d, consistent=%s",
            report.trials,
            document["high"]["best"],
            document["low"]["best"],
            consistent,
        )
        if not consistent:
            self.manager.exit(ExitCode.VERIFY_FAILED)
