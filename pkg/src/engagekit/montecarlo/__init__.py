"""Independent verification engines for the closed-form models.

Two kinds of referee live here:

* exact outcome-tree enumeration of the discrete duels, which weights
  every shot-outcome branch by its Bernoulli probability and is the
  ground truth the duel closed forms are tested against;
* seeded counter-based Monte Carlo (see rng) for both the discrete duels
  and the joint Gaussian engagement models, chunk-partitionable with
  bit-identical merges.

Estimates carry binomial standard errors.  The engagement classifier
draws every variable of both sides jointly per sample and evaluates all
win conditions on the shared draws, so it also measures the overlap of
the two win events, which the closed-form mutual-kill complement treats
as empty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..advantage import EngagementScenario, SeekerMode, scenario_factors
from ..exchange import DuelMode, DuelOutcome, DuelParams, FirstShooter
from . import backend
from .rng import DUEL_STREAM, ENGAGEMENT_STREAM, GENERATOR_ID, derive_seed

MAX_ENUMERATION_ROUNDS = 20
# Samples per kernel call; bounds the fallback backend's working set.
_CHUNK = 1 << 16


class EnumerationLimitError(ValueError):
    """The requested outcome tree is too deep to enumerate."""


@dataclass(frozen=True)
class McConfig:
    """Sample count and 64-bit master seed of one estimator run."""

    samples: int
    seed: int

    def __post_init__(self) -> None:
        if not isinstance(self.samples, int) or self.samples < 1:
            raise ValueError(f"samples must be a positive integer, got {self.samples!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")


@dataclass(frozen=True)
class McEstimate:
    """A probability estimate with its binomial standard error."""

    estimate: float
    std_error: float
    samples: int

    @classmethod
    def from_count(cls, count: int, samples: int) -> "McEstimate":
        p = count / samples
        return cls(p, math.sqrt(p * (1.0 - p) / samples), samples)


@dataclass(frozen=True)
class DiscreteDuelMc:
    """Monte Carlo estimates of the four duel outcome fields.

    ``class_counts`` holds the mutually exclusive terminal tallies
    (red_only, blue_only, mutual, both_survive); the destruction estimates
    include the mutual event, mirroring the closed forms.
    """

    red_destroyed: McEstimate
    blue_destroyed: McEstimate
    mutual: McEstimate
    both_survive: McEstimate
    class_counts: tuple[int, int, int, int]
    config: McConfig
    generator: str
    backend: str


@dataclass(frozen=True)
class EngagementMc:
    """Joint-draw Monte Carlo of the Gaussian engagement models.

    ``first_kill_blue`` estimates the single-sided event for blue under
    its configured seeker.  The duel estimates are present when both
    sides carry active seekers; ``p_mutual`` is the neither-win measure
    and ``overlap`` the both-win measure, reported separately because the
    closed-form complement assumes it is zero.  ``class_counts`` holds
    (blue_only, red_only, both, neither), which always sum to ``samples``.
    """

    first_kill_blue: McEstimate
    p_blue_win: McEstimate | None
    p_red_win: McEstimate | None
    p_mutual: McEstimate | None
    overlap: McEstimate | None
    class_counts: tuple[int, int, int, int]
    config: McConfig
    generator: str
    backend: str


def enumerate_duel(params: DuelParams) -> DuelOutcome:
    """Exact duel outcome probabilities by recursive branch enumeration.

    Every shot outcome is branched on explicitly and weighted by its
    Bernoulli probability; absorbed states terminate their branch.  The
    destruction probabilities include the mutual event, like the closed
    forms.  Guarded to MAX_ENUMERATION_ROUNDS rounds.
    """
    if params.rounds > MAX_ENUMERATION_ROUNDS:
        raise EnumerationLimitError(
            f"enumeration is limited to {MAX_ENUMERATION_ROUNDS} rounds, "
            f"got {params.rounds}"
        )
    p_b, p_r = params.p_blue, params.p_red
    acc = {"red": 0.0, "blue": 0.0, "mutual": 0.0, "survive": 0.0}
    blue_first = params.first_shooter is FirstShooter.BLUE
    sequential = params.mode is DuelMode.SEQUENTIAL

    def walk(round_index: int, weight: float) -> None:
        if weight == 0.0:
            return
        if round_index == params.rounds:
            acc["survive"] += weight
            return
        if sequential:
            p_first, p_second = (p_b, p_r) if blue_first else (p_r, p_b)
            first_key, second_key = ("red", "blue") if blue_first else ("blue", "red")
            # first shooter's shot: a hit ends the fight before the reply
            acc[first_key] += weight * p_first
            reply = weight * (1.0 - p_first)
            acc[second_key] += reply * p_second
            walk(round_index + 1, reply * (1.0 - p_second))
        else:
            # four volley outcomes; both destruction tallies include the
            # mutual branch
            acc["mutual"] += weight * p_b * p_r
            acc["red"] += weight * p_b * p_r
            acc["blue"] += weight * p_b * p_r
            acc["red"] += weight * p_b * (1.0 - p_r)
            acc["blue"] += weight * (1.0 - p_b) * p_r
            walk(round_index + 1, weight * (1.0 - p_b) * (1.0 - p_r))

    walk(0, 1.0)
    return DuelOutcome(
        p_red_destroyed=acc["red"],
        p_blue_destroyed=acc["blue"],
        p_mutual=acc["mutual"],
        p_both_survive=acc["survive"],
    )


def _merge(totals: tuple[int, ...], part: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(totals, part))


def mc_discrete_duel(params: DuelParams, config: McConfig) -> DiscreteDuelMc:
    """Seeded simulation of the duel shot process."""
    stream = derive_seed(config.seed, DUEL_STREAM)
    sequential = params.mode is DuelMode.SEQUENTIAL
    blue_first = params.first_shooter is FirstShooter.BLUE
    # keep the per-call uniform matrix of the fallback backend bounded
    chunk = max(1, min(_CHUNK, 4_000_000 // max(params.rounds, 1)))
    counts: tuple[int, ...] = (0, 0, 0, 0)
    for start in range(0, config.samples, chunk):
        n = min(chunk, config.samples - start)
        counts = _merge(
            counts,
            backend.duel_counts(
                params.p_blue, params.p_red, params.rounds,
                sequential, blue_first, stream, start, n,
            ),
        )
    red_only, blue_only, mutual, survive = counts
    total = config.samples
    return DiscreteDuelMc(
        red_destroyed=McEstimate.from_count(red_only + mutual, total),
        blue_destroyed=McEstimate.from_count(blue_only + mutual, total),
        mutual=McEstimate.from_count(mutual, total),
        both_survive=McEstimate.from_count(survive, total),
        class_counts=counts,
        config=config,
        generator=GENERATOR_ID,
        backend=backend.BACKEND_NAME,
    )


def _gaussian_slots(scenario: EngagementScenario) -> tuple[np.ndarray, np.ndarray]:
    """(means, sds) in the fixed six-slot kernel layout; absent
    acquisition specs become point masses at zero."""
    means = np.zeros(6, dtype=np.float64)
    sds = np.zeros(6, dtype=np.float64)
    for base, side in ((0, scenario.blue), (3, scenario.red)):
        means[base] = side.detection.mean
        sds[base] = side.detection.sd
        means[base + 1] = side.launch_delay.mean
        sds[base + 1] = side.launch_delay.sd
        if side.seeker_acquisition is not None:
            means[base + 2] = side.seeker_acquisition.mean
            sds[base + 2] = side.seeker_acquisition.sd
    return means, sds


def mc_range_advantage(scenario: EngagementScenario, config: McConfig) -> EngagementMc:
    """Joint-sampling Monte Carlo of the Gaussian engagement models.

    All six per-side variables are drawn jointly per sample; the
    single-sided first-kill condition and both duel win conditions are
    evaluated on the shared draws.  Samples are classified exactly once
    into blue-only / red-only / both / neither.
    """
    factors = scenario_factors(scenario)
    means, sds = _gaussian_slots(scenario)
    blue_active = (
        scenario.blue.seeker is SeekerMode.ACTIVE
        and scenario.blue.seeker_acquisition is not None
    )
    red_active = (
        scenario.red.seeker is SeekerMode.ACTIVE
        and scenario.red.seeker_acquisition is not None
    )
    stream = derive_seed(config.seed, ENGAGEMENT_STREAM)
    counts: tuple[int, ...] = (0, 0, 0, 0, 0)
    for start in range(0, config.samples, _CHUNK):
        n = min(_CHUNK, config.samples - start)
        counts = _merge(
            counts,
            backend.engagement_counts(
                factors.v_closure, factors.blue_factor, factors.red_factor,
                blue_active, means, sds, stream, start, n,
            ),
        )
    single, blue_only, red_only, both, neither = counts
    total = config.samples
    duel_valid = blue_active and red_active
    return EngagementMc(
        first_kill_blue=McEstimate.from_count(single, total),
        p_blue_win=McEstimate.from_count(blue_only + both, total) if duel_valid else None,
        p_red_win=McEstimate.from_count(red_only + both, total) if duel_valid else None,
        p_mutual=McEstimate.from_count(neither, total) if duel_valid else None,
        overlap=McEstimate.from_count(both, total) if duel_valid else None,
        class_counts=(blue_only, red_only, both, neither),
        config=config,
        generator=GENERATOR_ID,
        backend=backend.BACKEND_NAME,
    )
