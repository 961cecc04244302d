"""Closed-form probability models for discrete missile exchanges.

Covers four engagement shapes:

* one-sided salvos -- k independent shots against a passive target,
* sequential one-on-one duels -- the sides alternate single shots and a
  destroyed side never fires again,
* simultaneous one-on-one duels -- both volleys of a round arrive at the
  same instant, so a mutual kill is possible,
* equal-strength many-versus-many raids where each attacker empties its
  full load at one assigned target.

All functions are pure and operate on plain floats; probabilities are
validated on construction of the parameter types.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class FirstShooter(Enum):
    BLUE = "blue"
    RED = "red"


class DuelMode(Enum):
    SEQUENTIAL = "sequential"
    SIMULTANEOUS = "simultaneous"


class UnsupportedEngagement(ValueError):
    """Raised for engagement configurations outside the modeled cases."""


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")


@dataclass(frozen=True)
class SalvoParams:
    """A salvo of ``shots`` independent rounds, each killing with ``p_kill``."""

    p_kill: float
    shots: int

    def __post_init__(self) -> None:
        _check_probability("p_kill", self.p_kill)
        if not isinstance(self.shots, int) or self.shots < 0:
            raise ValueError(f"shots must be a nonnegative integer, got {self.shots!r}")


@dataclass(frozen=True)
class DuelParams:
    """A one-on-one duel of ``rounds`` shot pairs.

    ``p_blue`` is the chance one blue shot destroys red; ``p_red`` the
    converse.  ``first_shooter`` only matters in sequential mode, where
    shots within a round are resolved in firing order.
    """

    p_blue: float
    p_red: float
    rounds: int
    first_shooter: FirstShooter = FirstShooter.BLUE
    mode: DuelMode = DuelMode.SEQUENTIAL

    def __post_init__(self) -> None:
        _check_probability("p_blue", self.p_blue)
        _check_probability("p_red", self.p_red)
        if not isinstance(self.rounds, int) or self.rounds < 1:
            raise ValueError(f"rounds must be a positive integer, got {self.rounds!r}")


@dataclass(frozen=True)
class NvnParams:
    """Equal-strength raid: ``attackers`` each fire ``weapons_per_attacker``
    shots, every shot killing with probability ``p_kill``.

    Only the assigned-target case with as many attackers as targets is
    modeled; the survival exponent uses the total weapon count divided by
    the target count, which for that case equals the per-attacker load
    squared when expressed in single shots.
    """

    p_kill: float
    weapons_per_attacker: int
    attackers: int
    targets: int

    def __post_init__(self) -> None:
        _check_probability("p_kill", self.p_kill)
        for name in ("weapons_per_attacker", "attackers", "targets"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")

    @property
    def total_weapons(self) -> int:
        return self.attackers * self.weapons_per_attacker


@dataclass(frozen=True)
class DuelOutcome:
    """Terminal probabilities of a duel.

    In simultaneous mode ``p_mutual`` is the chance both sides die in the
    same round and the four fields satisfy
    ``p_red_destroyed + p_blue_destroyed - p_mutual + p_both_survive = 1``
    (the two destruction events overlap exactly on the mutual kill).  In
    sequential mode ``p_mutual`` is zero and the same identity holds.
    """

    p_red_destroyed: float
    p_blue_destroyed: float
    p_mutual: float
    p_both_survive: float


@dataclass(frozen=True)
class NvnOutcome:
    survival_rate: float
    expected_survivors: float
    salvo_kill_prob: float


def survive_salvo(params: SalvoParams) -> float:
    """Probability the target survives every shot of the salvo."""
    return (1.0 - params.p_kill) ** params.shots


def kill_salvo(params: SalvoParams) -> float:
    """Probability at least one shot of the salvo kills the target."""
    return 1.0 - survive_salvo(params)


def _geometric_round_sum(p_blue: float, p_red: float, rounds: int) -> float:
    """Sum over rounds of the probability that both sides enter the round
    alive, i.e. (1 - q^n) / (1 - q) with q the per-round joint survival.

    Degenerates to 0 when neither side can ever score (q = 1): with no
    possible kill every destruction probability is zero.
    """
    q = (1.0 - p_blue) * (1.0 - p_red)
    denom = 1.0 - q
    if denom == 0.0:
        return 0.0
    return (1.0 - q ** rounds) / denom


def sequential_duel(params: DuelParams) -> DuelOutcome:
    """Outcome of a duel where shots alternate and a kill ends the fight.

    The side shooting first in each round gets its shot off before the
    opponent can reply, so a destroyed responder never fires: there is no
    mutual kill in this mode.
    """
    if params.mode is not DuelMode.SEQUENTIAL:
        raise ValueError("sequential_duel requires mode=SEQUENTIAL")
    p_b, p_r, n = params.p_blue, params.p_red, params.rounds
    q = (1.0 - p_b) * (1.0 - p_r)
    geom = _geometric_round_sum(p_b, p_r, n)
    if params.first_shooter is FirstShooter.BLUE:
        p_red_destroyed = p_b * geom
        p_blue_destroyed = p_r * (1.0 - p_b) * geom
    else:
        p_blue_destroyed = p_r * geom
        p_red_destroyed = p_b * (1.0 - p_r) * geom
    return DuelOutcome(
        p_red_destroyed=p_red_destroyed,
        p_blue_destroyed=p_blue_destroyed,
        p_mutual=0.0,
        p_both_survive=q ** n,
    )


def simultaneous_duel(params: DuelParams) -> DuelOutcome:
    """Outcome of a duel where both shots of a round arrive together.

    Each round has four outcomes (both die, red dies, blue dies, both
    live); the fight continues only in the last case.  Destruction
    probabilities no longer depend on who nominally fires first, and the
    mutual kill accumulates the both-die event over the geometric sum of
    survived rounds.
    """
    if params.mode is not DuelMode.SIMULTANEOUS:
        raise ValueError("simultaneous_duel requires mode=SIMULTANEOUS")
    p_b, p_r, n = params.p_blue, params.p_red, params.rounds
    q = (1.0 - p_b) * (1.0 - p_r)
    geom = _geometric_round_sum(p_b, p_r, n)
    return DuelOutcome(
        p_red_destroyed=p_b * geom,
        p_blue_destroyed=p_r * geom,
        p_mutual=p_b * p_r * geom,
        p_both_survive=q ** n,
    )


def nvn_survivors(params: NvnParams) -> NvnOutcome:
    """Expected surviving targets of an equal-strength assigned-target raid.

    Only the case with one attacker per target is supported.  The survival
    rate composes the per-load kill probability with the weapons-per-target
    exponent; an internal cross-check confirms it collapses to the direct
    single-shot form ``(1 - p) ** (J * J)``.
    """
    if params.attackers != params.targets:
        raise UnsupportedEngagement(
            "only engagements with attackers == targets are modeled "
            f"(got {params.attackers} vs {params.targets})"
        )
    p, j, t = params.p_kill, params.weapons_per_attacker, params.targets
    salvo_kill = 1.0 - (1.0 - p) ** j
    survival_rate = (1.0 - salvo_kill) ** (params.total_weapons / t)
    collapsed = (1.0 - p) ** (j * j)
    if not math.isclose(survival_rate, collapsed, rel_tol=0.0, abs_tol=1e-12):
        raise AssertionError(
            f"survival-rate composition drifted from its closed form: "
            f"{survival_rate!r} vs {collapsed!r}"
        )
    return NvnOutcome(
        survival_rate=survival_rate,
        expected_survivors=t * survival_rate,
        salvo_kill_prob=salvo_kill,
    )
