from __future__ import annotations

import argparse
import logging
from typing import Any, Dict

from commands.common import (
    MARKET_KEYS,
    OUT_KEYS,
    add_market_arguments,
    add_out_argument,
    market_config_from,
    write_json,
)
from core import Command
from entities.equilibrium import solve_market
from entities.market import EquilibriumProfile, MarketConfig, WelfareReport
from entities.welfare import efficiency_report

logger = logging.getLogger(__name__)


def profile_document(
    config: MarketConfig, profile: EquilibriumProfile, report: WelfareReport
) -> Dict[str, Any]:
    return {
        "config": config.to_dict(),
        "x_high": profile.X_high.X,
        "x_low": profile.X_low.X,
        "kind_high": profile.kind_high.value,
        "kind_low": profile.kind_low.value,
        "p_high": profile.stage_high.p_high,
        "p_low": profile.stage_high.p_low,
        "q_high": profile.stage_low.p_high,
        "q_low": profile.stage_low.p_low,
        "alpha_high": profile.stage_high.free_high,
        "alpha_low": profile.stage_high.free_low,
        "masses": profile.masses(),
        "w_nash": report.w_nash,
        "w_simple": report.w_simple,
        "w_opt": report.w_opt,
        "ratios": {
            "nash_simple": report.ratio_nash_simple,
            "nash_opt": report.ratio_nash_opt,
        },
    }


class Solve(Command):
    name = "solve"
    help = "solve one market and print its equilibrium as JSON"
    config_keys = MARKET_KEYS + OUT_KEYS

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_market_arguments(parser)
        add_out_argument(parser)

    def run(self, args: argparse.Namespace) -> None:
        config = market_config_from(args)
        profile = solve_market(config)
        report = efficiency_report(config, profile)

        write_json(profile_document(config, profile, report), args.out)
        logger.info(
            "solved v=%g K=%d rho_high=%g: x_high=%.6f x_low=%.6f w_nash=%.6f",
            config.v,
            config.K,
            config.d_high,
            profile.X_high.X,
            profile.X_low.X,
            report.w_nash,
        )
