from __future__ import annotations

import configparser
import logging
import os
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional, Tuple, TypeVar

from core.errors import ConfigError
from core.settings import CONFIG_SECTION, JOBS_ENV_VAR

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


class Timer:
    def __init__(self) -> None:
        self.start_time = 0.0
        self.stop_time = 0.0
        self.active = False

    def activate(self) -> None:
        self.active = True
        self.start_time = time.perf_counter()

    def deactivate(self) -> None:
        self.active = False
        self.stop_time = time.perf_counter()

    @property
    def elapsed(self) -> float:
        end = time.perf_counter() if self.active else self.stop_time
        return end - self.start_time

    def __enter__(self) -> Timer:
        self.activate()
        return self

    def __exit__(self, *_) -> None:
        self.deactivate()


def resolve_jobs(jobs: Optional[int] = None) -> int:
    """Worker count from the flag, then the environment, then the core count."""

    if jobs is None:
        env_value = os.environ.get(JOBS_ENV_VAR)
        if env_value:
            try:
                jobs = int(env_value)
            except ValueError as error:
                raise ConfigError(
                    f"{JOBS_ENV_VAR} must be an integer, got {env_value!r}"
                ) from error
        else:
            jobs = os.cpu_count() or 1

    if jobs < 1:
        raise ConfigError(f"jobs must be at least 1, got {jobs}")
    return jobs


def fan_out(func: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    """Maps ``func`` over ``items``, in a process pool when ``jobs > 1``.

    Results always come back in input order. ``func`` must be picklable, i.e.
    defined at module level.
    """

    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    workers = min(jobs, len(items))
    chunksize = max(1, len(items) // (workers * 4))
    logger.debug("fanning %d tasks over %d workers", len(items), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunksize))


def load_config_file(path: str) -> Dict[str, str]:
    """Reads the ``[market]`` section of an INI file into a flat dictionary."""

    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as file:
            parser.read_file(file)
    except OSError as error:
        raise ConfigError(f"cannot read config file {path}: {error}") from error
    except configparser.Error as error:
        raise ConfigError(f"malformed config file {path}: {error}") from error

    if not parser.has_section(CONFIG_SECTION):
        raise ConfigError(f"config file {path} has no [{CONFIG_SECTION}] section")
    return {
        key.replace("-", "_"): value for key, value in parser.items(CONFIG_SECTION)
    }


def parse_float_list(text: str) -> Tuple[float, ...]:
    try:
        values = tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError as error:
        raise ConfigError(f"not a comma separated list of numbers: {text!r}") from error
    if not values:
        raise ConfigError(f"empty list: {text!r}")
    return values


def parse_k_range(text: str) -> Tuple[int, ...]:
    """Parses ``a-b``, ``a:b`` (both inclusive) or a single integer."""

    text = text.strip()
    try:
        for separator in ("-", ":"):
            if separator in text:
                first, last = (int(part) for part in text.split(separator, 1))
                break
        else:
            first = last = int(text)
    except ValueError as error:
        raise ConfigError(f"invalid K range: {text!r}") from error

    values = tuple(range(first, last + 1))
    if not values:
        raise ConfigError(f"empty K range: {text!r}")
    if first < 1:
        raise ConfigError("K must be a positive integer")
    return values
