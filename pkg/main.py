__version__ = "1.0"

import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence

from commands import COMMANDS
from core import CommandManager
from core.errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    ExitCommandError,
    InconsistencyError,
)
from core.settings import ExitCode
from core.utils import load_config_file

logger = logging.getLogger("main")

LOG_FORMAT = "%(levelname)-8s %(name)s: %(message)s"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
GLOBAL_CONFIG_KEYS = ("jobs", "log_level")


class Main:
    def __init__(self) -> None:
        self.command_manager = CommandManager()
        self.command_manager.load_commands(*COMMANDS)

        self.parser = argparse.ArgumentParser(
            prog="shortlist",
            description="Short-list deferred acceptance: equilibrium solver and simulator.",
        )
        self.parser.add_argument(
            "--version", action="version", version="%(prog)s " + __version__
        )
        self.parser.add_argument("--config", help="INI file with a [market] section")
        self.parser.add_argument(
            "--jobs", type=int, default=None, help="worker processes (default: cores)"
        )
        self.parser.add_argument("--log-level", choices=LOG_LEVELS, default="INFO")
        self.subparsers = self.command_manager.add_subparsers(self.parser)

    def apply_config(self, values: Dict[str, str]) -> None:
        """Turns config-file entries into parser defaults, so flags still win."""

        known = set(GLOBAL_CONFIG_KEYS)
        self.parser.set_defaults(
            **{key: value for key, value in values.items() if key in GLOBAL_CONFIG_KEYS}
        )
        for name, command in self.command_manager.get_command_map().items():
            self.subparsers[name].set_defaults(
                **{key: value for key, value in values.items() if key in command.config_keys}
            )
            known.update(command.config_keys)

        unknown = set(values) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")

    def parse(self, argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
        config_parser = argparse.ArgumentParser(add_help=False)
        config_parser.add_argument("--config")
        known, _ = config_parser.parse_known_args(argv)

        if known.config:
            self.apply_config(load_config_file(known.config))
        return self.parser.parse_args(argv)

    def run(self, argv: Optional[List[str]] = None) -> int:
        logging.basicConfig(level=logging.INFO, format=LOG_FORMAT, stream=sys.stderr)

        try:
            args = self.parse(argv)
            logging.getLogger().setLevel(args.log_level)

            self.command_manager.change_command(args.command)
            self.command_manager.run_command(args)
        except ExitCommandError as error:
            return error.exit_code
        except (ConfigError, DomainError) as error:
            logger.error("%s", error)
            return ExitCode.INVALID
        except (ConvergenceError, InconsistencyError) as error:
            logger.error("%s", error)
            return ExitCode.INCONSISTENT
        return ExitCode.OK


if __name__ == "__main__":
    sys.exit(Main().run())
