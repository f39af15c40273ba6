"""
Finite-market Monte-Carlo oracle for the large-market model.

Doctors are indexed high tier first, then low tier; hospitals likewise. A
hospital ranks doctors lexicographically by tier and then by an iid uniform
score. Since a doctor never lists the same hospital twice, every
(doctor, hospital) pair is scored at most once, and the score is drawn up front
for each list slot instead of lazily per pair.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import ConfigError
from core.settings import Simulation
from core.utils import fan_out
from entities.kernels import split_strategy
from entities.market import EquilibriumProfile, MarketConfig, Strategy
from entities.welfare import welfare_of_profile

logger = logging.getLogger(__name__)

QUANTITIES: Tuple[str, ...] = (
    "hh",
    "hl",
    "lh",
    "ll",
    "welfare",
    "match_high",
    "match_low",
)
TIERS: Tuple[str, ...] = ("high", "low")


def _round_count(value: float) -> int:
    # nearest integer, ties up
    return int(math.floor(value + 0.5))


def trial_seed(seed: int, trial: int) -> int:
    """Seed of one trial, derived from the master seed by a fixed counter."""

    sequence = np.random.SeedSequence(seed, spawn_key=(trial,))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class FiniteInstance:
    """A market of finitely many agents playing a fixed strategy profile."""

    n_dh: int
    n_dl: int
    n_hh: int
    n_hl: int
    K: int
    X_high: float
    X_low: float
    v: float
    seed: int = Simulation.DEFAULT_SEED

    def __post_init__(self) -> None:
        if min(self.n_dh, self.n_dl, self.n_hh, self.n_hl) < 0:
            raise ConfigError("agent counts must be nonnegative", instance=self)

        for name, count, X in (
            ("high", self.n_dh, self.X_high),
            ("low", self.n_dl, self.X_low),
        ):
            if count == 0:
                continue
            k, x = split_strategy(X)
            most_high = k + 1 if x > 0 else k
            if most_high > self.n_hh or self.K - k > self.n_hl:
                raise ConfigError(
                    f"{name} doctors list more hospitals of a tier than exist",
                    instance=self,
                )

    @classmethod
    def from_config(
        cls,
        config: MarketConfig,
        X_high: float,
        X_low: float,
        n: int,
        seed: int = Simulation.DEFAULT_SEED,
    ) -> FiniteInstance:
        """Scales the config masses by ``n`` and rounds them to agent counts."""

        return cls(
            n_dh=_round_count(n * config.d_high),
            n_dl=_round_count(n * config.d_low),
            n_hh=_round_count(n * config.h_high),
            n_hl=_round_count(n * config.h_low),
            K=config.K,
            X_high=X_high,
            X_low=X_low,
            v=config.v,
            seed=seed,
        )

    @property
    def n_doctors(self) -> int:
        return self.n_dh + self.n_dl

    @property
    def n_hospitals(self) -> int:
        return self.n_hh + self.n_hl

    def doctor_tiers(self) -> np.ndarray:
        """1.0 for a high doctor, 0.0 for a low one."""

        return np.concatenate([np.ones(self.n_dh), np.zeros(self.n_dl)])

    def with_seed(self, seed: int) -> FiniteInstance:
        return replace(self, seed=seed)


@dataclass(frozen=True)
class SubmittedLists:
    """Ranked lists, one row per doctor, padded with ``-1``.

    ``keys[d, i]`` is the score hospital ``hospitals[d, i]`` gives doctor ``d``;
    hospitals hold the highest key they have seen.
    """

    hospitals: np.ndarray
    keys: np.ndarray

    @property
    def width(self) -> int:
        return self.hospitals.shape[1]

    def high_counts(self, instance: FiniteInstance) -> np.ndarray:
        return ((self.hospitals >= 0) & (self.hospitals < instance.n_hh)).sum(axis=1)


@dataclass(frozen=True)
class Matching:
    doctor_to_hospital: np.ndarray
    hospital_to_doctor: np.ndarray

    def pair_counts(self, instance: FiniteInstance) -> Dict[str, int]:
        assigned = self.doctor_to_hospital
        matched = assigned >= 0
        doctor_high = np.arange(instance.n_doctors) < instance.n_dh
        hospital_high = matched & (assigned < instance.n_hh)
        hospital_low = matched & ~hospital_high
        return {
            "hh": int(np.sum(doctor_high & hospital_high)),
            "hl": int(np.sum(doctor_high & hospital_low)),
            "lh": int(np.sum(~doctor_high & hospital_high)),
            "ll": int(np.sum(~doctor_high & hospital_low)),
        }

    def welfare(self, instance: FiniteInstance) -> float:
        """Welfare per doctor."""

        counts = self.pair_counts(instance)
        masses = {key: value / instance.n_doctors for key, value in counts.items()}
        return welfare_of_profile(masses, instance.v)


def _distinct(rng: np.random.Generator, rows: int, width: int, m: int) -> np.ndarray:
    """``rows`` independent draws of ``width`` distinct integers in ``[0, m)``,
    in random order."""

    if rows == 0 or width == 0:
        return np.empty((rows, width), dtype=np.int64)
    if width > m:
        raise ConfigError(f"cannot list {width} distinct hospitals out of {m}")

    if width > Simulation.PERMUTE_RATIO * m:
        base = np.tile(np.arange(m, dtype=np.int64), (rows, 1))
        return rng.permuted(base, axis=1)[:, :width]

    draws = rng.integers(0, m, size=(rows, width), dtype=np.int64)
    while True:
        ordered = np.sort(draws, axis=1)
        repeated = (np.diff(ordered, axis=1) == 0).any(axis=1)
        if not repeated.any():
            return draws
        draws[repeated] = rng.integers(
            0, m, size=(int(repeated.sum()), width), dtype=np.int64
        )


def _tier_lists(
    rng: np.random.Generator, count: int, X: float, instance: FiniteInstance
) -> np.ndarray:
    K = instance.K
    k, x = split_strategy(X)
    n_high = k + (rng.random(count) < x).astype(np.int64)

    high_width = k + 1 if x > 0 else k
    highs = _distinct(rng, count, high_width, instance.n_hh)
    lows = _distinct(rng, count, K - k, instance.n_hl) + instance.n_hh
    candidates = np.concatenate([highs, lows], axis=1)

    columns = np.arange(K)[None, :]
    source = np.where(
        columns < n_high[:, None], columns, high_width + columns - n_high[:, None]
    )
    return np.take_along_axis(candidates, source, axis=1)


def sample_lists(
    instance: FiniteInstance, rng: Optional[np.random.Generator] = None
) -> SubmittedLists:
    """Draws every doctor's K-list and the hospitals' scores for each entry.

    A doctor playing ``(k, K - k)`` lists ``k`` distinct random high hospitals
    followed by ``K - k`` distinct random low ones; under a mixed strategy each
    doctor independently plays ``(k + 1, K - k - 1)`` with probability ``x``.
    Deterministic given ``instance.seed`` when ``rng`` is not supplied.
    """

    if rng is None:
        rng = np.random.default_rng(instance.seed)

    hospitals = np.concatenate(
        [
            _tier_lists(rng, instance.n_dh, instance.X_high, instance),
            _tier_lists(rng, instance.n_dl, instance.X_low, instance),
        ],
        axis=0,
    )
    keys = instance.doctor_tiers()[:, None] + rng.random(hospitals.shape)
    return SubmittedLists(hospitals, keys)


def full_preference_lists(
    instance: FiniteInstance, rng: Optional[np.random.Generator] = None
) -> SubmittedLists:
    """Every doctor lists every hospital, all high ones before all low ones."""

    if rng is None:
        rng = np.random.default_rng(instance.seed)

    rows = instance.n_doctors
    highs = rng.permuted(np.tile(np.arange(instance.n_hh), (rows, 1)), axis=1)
    lows = rng.permuted(np.tile(np.arange(instance.n_hl), (rows, 1)), axis=1)
    hospitals = np.concatenate([highs, lows + instance.n_hh], axis=1).astype(np.int64)
    keys = instance.doctor_tiers()[:, None] + rng.random(hospitals.shape)
    return SubmittedLists(hospitals, keys)


class DeferredAcceptance:
    """Doctor-proposing deferred acceptance, one doctor at a time.

    Each entering doctor proposes down the list; a displaced doctor resumes
    from where it stopped. The result is the doctor-optimal stable matching
    whatever the entry order, and a stable state can be extended by new
    doctors without starting over.
    """

    __slots__ = ("hospitals", "keys", "holder", "held_key", "cursor")

    def __init__(self, lists: SubmittedLists, n_hospitals: int) -> None:
        self.hospitals: List[List[int]] = lists.hospitals.tolist()
        self.keys: List[List[float]] = lists.keys.tolist()
        self.holder = [-1] * n_hospitals
        self.held_key = [-math.inf] * n_hospitals
        self.cursor = [0] * len(self.hospitals)

    def propose(self, doctor: int) -> None:
        hospitals, keys = self.hospitals, self.keys
        holder, held_key, cursor = self.holder, self.held_key, self.cursor

        current = doctor
        while current != -1:
            row = hospitals[current]
            position = cursor[current]
            if position >= len(row):
                break
            cursor[current] = position + 1

            hospital = row[position]
            if hospital < 0:
                continue
            key = keys[current][position]
            if key > held_key[hospital]:
                held_key[hospital] = key
                current, holder[hospital] = holder[hospital], current

    def fork(self, row: Sequence[int], key_row: Sequence[float]) -> Tuple[DeferredAcceptance, int]:
        """Copies the state and appends a new, not yet proposing doctor."""

        clone = DeferredAcceptance.__new__(DeferredAcceptance)
        clone.hospitals = self.hospitals + [list(row)]
        clone.keys = self.keys + [list(key_row)]
        clone.holder = list(self.holder)
        clone.held_key = list(self.held_key)
        clone.cursor = self.cursor + [0]
        return clone, len(self.hospitals)

    def assignment_of(self, doctor: int) -> int:
        for hospital in self.hospitals[doctor]:
            if hospital >= 0 and self.holder[hospital] == doctor:
                return hospital
        return -1

    def matching(self) -> Matching:
        hospital_to_doctor = np.array(self.holder, dtype=np.int64)
        doctor_to_hospital = np.full(len(self.hospitals), -1, dtype=np.int64)
        held = hospital_to_doctor >= 0
        doctor_to_hospital[hospital_to_doctor[held]] = np.flatnonzero(held)
        return Matching(doctor_to_hospital, hospital_to_doctor)


def run_da(
    instance: FiniteInstance,
    lists: SubmittedLists,
    order: Optional[Sequence[int]] = None,
) -> Matching:
    """Runs deferred acceptance on the submitted lists.

    Parameters
    ----------
    order: :class:`Optional[Sequence[int]]`
        Permutation of the doctors giving their entry order. The matching does
        not depend on it.
    """

    state = DeferredAcceptance(lists, instance.n_hospitals)
    for doctor in range(instance.n_doctors) if order is None else order:
        state.propose(int(doctor))
    return state.matching()


def find_blocking_pair(
    instance: FiniteInstance, lists: SubmittedLists, matching: Matching
) -> Optional[Tuple[int, int]]:
    """A doctor and a hospital listed above the assignment that would take
    the doctor, or ``None`` when the matching is stable with respect to the lists."""

    held_key = np.full(instance.n_hospitals, -math.inf)
    for doctor, hospital in enumerate(matching.doctor_to_hospital):
        if hospital >= 0:
            position = int(np.flatnonzero(lists.hospitals[doctor] == hospital)[0])
            held_key[hospital] = lists.keys[doctor, position]

    for doctor in range(instance.n_doctors):
        assigned = matching.doctor_to_hospital[doctor]
        for position, hospital in enumerate(lists.hospitals[doctor]):
            if hospital == assigned:
                break
            if hospital >= 0 and lists.keys[doctor, position] > held_key[hospital]:
                return doctor, int(hospital)
    return None


@dataclass(frozen=True)
class SimReport:
    """Means and standard errors over trials of every quantity in ``QUANTITIES``.

    Pair masses and welfare are per doctor; ``match_high`` / ``match_low`` are
    the matched fractions of each doctor tier.
    """

    n: int
    trials: int
    mean: Dict[str, float]
    stderr: Dict[str, float]

    @classmethod
    def from_samples(cls, samples: np.ndarray, n: int) -> SimReport:
        trials = samples.shape[0]
        means = samples.mean(axis=0)
        errors = samples.std(axis=0, ddof=1) / math.sqrt(trials)
        return cls(
            n=n,
            trials=trials,
            mean={name: float(value) for name, value in zip(QUANTITIES, means)},
            stderr={name: float(value) for name, value in zip(QUANTITIES, errors)},
        )


def expected_quantities(
    config: MarketConfig, profile: EquilibriumProfile
) -> Dict[str, float]:
    """The large-market values of every quantity a ``SimReport`` measures."""

    masses = profile.masses()
    match_high = (masses["hh"] + masses["hl"]) / config.d_high if config.d_high else 0.0
    match_low = (masses["lh"] + masses["ll"]) / config.d_low if config.d_low else 0.0
    return {
        **masses,
        "welfare": welfare_of_profile(masses, config.v),
        "match_high": match_high,
        "match_low": match_low,
    }


def _check_size(n: int, trials: int, min_trials: int = Simulation.MIN_TRIALS) -> None:
    if n < Simulation.MIN_N:
        raise ConfigError(f"n must be at least {Simulation.MIN_N}, got {n}")
    if trials < min_trials:
        raise ConfigError(f"trials must be at least {min_trials}, got {trials}")


def _estimate_trial(task: Tuple[FiniteInstance, int]) -> np.ndarray:
    base, seed = task
    instance = base.with_seed(seed)
    matching = run_da(instance, sample_lists(instance))

    counts = matching.pair_counts(instance)
    n_doctors = instance.n_doctors
    return np.array(
        [
            counts["hh"] / n_doctors,
            counts["hl"] / n_doctors,
            counts["lh"] / n_doctors,
            counts["ll"] / n_doctors,
            matching.welfare(instance),
            (counts["hh"] + counts["hl"]) / instance.n_dh if instance.n_dh else 0.0,
            (counts["lh"] + counts["ll"]) / instance.n_dl if instance.n_dl else 0.0,
        ]
    )


def estimate(
    config: MarketConfig,
    profile: EquilibriumProfile,
    n: int = Simulation.DEFAULT_N,
    trials: int = Simulation.DEFAULT_TRIALS,
    seed: int = Simulation.DEFAULT_SEED,
    jobs: int = 1,
) -> SimReport:
    """Simulates the profile in a market of size ``n`` over independent trials.

    Raises
    ------
    :exc:`ConfigError`
        Raised when ``n < 100``, ``trials < 10`` or a list cannot be filled.
    """

    _check_size(n, trials)
    instance = FiniteInstance.from_config(
        config, profile.X_high.X, profile.X_low.X, n, seed
    )
    tasks = [(instance, trial_seed(seed, trial)) for trial in range(trials)]
    logger.debug("simulating %d trials of %s", trials, instance)

    samples = np.vstack(fan_out(_estimate_trial, tasks, jobs))
    return SimReport.from_samples(samples, n)


@dataclass(frozen=True)
class ProbeReport:
    """Realized payoff of a single deviating doctor per tier.

    ``payoffs[tier]`` has one row per trial and one column per pure strategy
    ``j``, the number of high hospitals listed.
    """

    K: int
    trials: int
    payoffs: Dict[str, np.ndarray]

    def mean(self, tier: str) -> np.ndarray:
        return self.payoffs[tier].mean(axis=0)

    def stderr(self, tier: str) -> np.ndarray:
        return self.payoffs[tier].std(axis=0, ddof=1) / math.sqrt(self.trials)

    def best(self, tier: str) -> int:
        return int(np.argmax(self.mean(tier)))

    def consistent(
        self, tier: str, strategy: Strategy, sigmas: float = Simulation.PROBE_SIGMAS
    ) -> bool:
        """Whether the best empirical strategy is ``floor(X)`` or ``floor(X) + 1``,
        or beats both by no more than ``sigmas`` standard errors of the paired
        difference."""

        allowed = [j for j in (strategy.k, strategy.k + 1) if j <= self.K]
        top = self.best(tier)
        if top in allowed:
            return True

        samples = self.payoffs[tier]
        for j in allowed:
            gap = samples[:, top] - samples[:, j]
            error = gap.std(ddof=1) / math.sqrt(self.trials)
            if gap.mean() <= sigmas * error:
                return True
        return False


def _probe_trial(task: Tuple[FiniteInstance, int]) -> Tuple[np.ndarray, np.ndarray]:
    base, seed = task
    instance = base.with_seed(seed)
    rng = np.random.default_rng(seed)
    K = instance.K

    state = DeferredAcceptance(sample_lists(instance, rng), instance.n_hospitals)
    for doctor in range(instance.n_doctors):
        state.propose(doctor)

    payoffs = []
    for tier_value in (1.0, 0.0):
        # one draw of hospitals and scores shared by every j
        highs = _distinct(rng, 1, K, instance.n_hh)[0].tolist()
        lows = (_distinct(rng, 1, K, instance.n_hl)[0] + instance.n_hh).tolist()
        high_keys = (tier_value + rng.random(K)).tolist()
        low_keys = (tier_value + rng.random(K)).tolist()

        tier_payoffs = np.empty(K + 1)
        for j in range(K + 1):
            probe_state, probe = state.fork(
                highs[:j] + lows[: K - j], high_keys[:j] + low_keys[: K - j]
            )
            probe_state.propose(probe)
            hospital = probe_state.assignment_of(probe)
            if hospital < 0:
                tier_payoffs[j] = 0.0
            elif hospital < instance.n_hh:
                tier_payoffs[j] = instance.v
            else:
                tier_payoffs[j] = 1.0
        payoffs.append(tier_payoffs)
    return payoffs[0], payoffs[1]


def best_response_probe(
    config: MarketConfig,
    profile: EquilibriumProfile,
    n: int = Simulation.DEFAULT_N,
    trials: int = Simulation.DEFAULT_PROBE_TRIALS,
    seed: int = Simulation.DEFAULT_SEED,
    jobs: int = 1,
) -> ProbeReport:
    """Payoff of one extra doctor per tier listing ``j`` high and ``K - j`` low
    hospitals while the rest of the market plays ``profile``.

    Every ``j`` of a trial faces the same market and the same candidate
    hospitals, so payoff differences between strategies carry little noise.
    """

    _check_size(n, trials, min_trials=2)
    instance = FiniteInstance.from_config(
        config, profile.X_high.X, profile.X_low.X, n, seed
    )
    if min(instance.n_hh, instance.n_hl) < config.K:
        raise ConfigError("probe needs at least K hospitals in each tier")

    tasks = [(instance, trial_seed(seed, trial)) for trial in range(trials)]
    logger.debug("probing %d trials of %s", trials, instance)
    results = fan_out(_probe_trial, tasks, jobs)

    return ProbeReport(
        K=config.K,
        trials=trials,
        payoffs={
            "high": np.vstack([high for high, _ in results]),
            "low": np.vstack([low for _, low in results]),
        },
    )
