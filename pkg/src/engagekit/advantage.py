"""Gaussian launch-range models and duel win probabilities.

Detection range, launch delay and (for active seekers) seeker acquisition
range are independent Gaussians per side.  Every contest reduces to the
sign of a linear combination of them: a "margin" variable whose mean and
variance follow from independence, so each probability is one normal CDF
evaluation.

Event ordering convention: ranges shrink over time, so of two events the
one pinned at the larger blue-red separation happens first.  "Blue wins"
means blue's kill separation exceeds the separation at which red's
missile seeker acquires, and symmetrically for red.  The mutual-kill
probability is defined as the complement of the two win probabilities; it
is reported as computed, never clamped, and the Monte Carlo module
measures how far the implied disjointness of the win events actually
holds.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

from .geometry import Kinematics, ShotLine, TofConvention, lead_angle, shot_line

_SQRT_2PI = math.sqrt(2.0 * math.pi)
# Branch point between the central power series and the tail continued
# fraction; both deliver far better than the 1e-10 absolute contract.
_SERIES_LIMIT = 7.0
_CF_LEVELS = 100


class ModelWarning(UserWarning):
    """A physically dubious but representable model configuration."""


class SeekerConfigError(ValueError):
    """The requested computation needs a seeker spec the side lacks."""


class SeekerMode(Enum):
    SEMI_ACTIVE = "sar"
    ACTIVE = "ar"


def _phi(x: float) -> float:
    return math.exp(-0.5 * x * x) / _SQRT_2PI


def normal_cdf(x: float) -> float:
    """Standard normal CDF.

    Central region (|x| <= 7): the odd power series
    0.5 + phi(x) * sum_n x**(2n+1) / (1*3*...*(2n+1)), whose terms all
    share x's sign, so there is no cancellation.  Tails: the Laplace
    continued fraction for the Mills ratio, evaluated bottom-up.  Absolute
    error is below 1e-14 everywhere; tail values keep full relative
    accuracy.
    """
    if math.isnan(x):
        raise ValueError("normal_cdf requires a non-NaN argument")
    ax = abs(x)
    if ax <= _SERIES_LIMIT:
        term = x
        total = x
        xx = x * x
        n = 0
        while n < 400:
            n += 1
            term *= xx / (2 * n + 1)
            new = total + term
            if new == total:
                break
            total = new
        return 0.5 + _phi(x) * total
    if math.isinf(x):
        return 1.0 if x > 0 else 0.0
    f = ax
    for k in range(_CF_LEVELS, 0, -1):
        f = ax + k / f
    tail = _phi(ax) / f
    return 1.0 - tail if x > 0 else tail


def gaussian_exceedance(mean: float, sd: float) -> float:
    """P(N(mean, sd) > 0); a step function in the degenerate sd = 0 case."""
    if sd < 0.0:
        raise ValueError("sd must be nonnegative")
    if sd == 0.0:
        if mean > 0.0:
            return 1.0
        return 0.5 if mean == 0.0 else 0.0
    return normal_cdf(mean / sd)


@dataclass(frozen=True)
class GaussianSpec:
    """Mean and standard deviation of one model variable (m or s)."""

    mean: float
    sd: float

    def __post_init__(self) -> None:
        if self.sd < 0.0:
            raise ValueError(f"sd must be nonnegative, got {self.sd!r}")


@dataclass(frozen=True)
class SideStochastics:
    """One side's random-variable specs.

    ``detection`` is the range at which this side detects its opponent,
    ``launch_delay`` the time from detection to launch.  Active seekers
    additionally carry ``seeker_acquisition``, the range from the target
    at which the missile's own seeker takes over.  The Gaussians are not
    truncated at zero; a launch-delay mean closer than three standard
    deviations to zero draws a ModelWarning instead, since
    launch-before-detection then stops being negligible.
    """

    detection: GaussianSpec
    launch_delay: GaussianSpec
    seeker: SeekerMode = SeekerMode.SEMI_ACTIVE
    seeker_acquisition: GaussianSpec | None = None

    def __post_init__(self) -> None:
        if self.launch_delay.mean < 3.0 * self.launch_delay.sd:
            warnings.warn(
                "launch-delay mean is within 3 sd of zero; negative delays "
                "are no longer negligible",
                ModelWarning,
                stacklevel=2,
            )

    def require_acquisition(self) -> GaussianSpec:
        if self.seeker is not SeekerMode.ACTIVE or self.seeker_acquisition is None:
            raise SeekerConfigError(
                "an active seeker with a seeker_acquisition spec is required"
            )
        return self.seeker_acquisition


@dataclass(frozen=True)
class EngagementScenario:
    """Geometry plus both sides' stochastics for one engagement."""

    kinematics: Kinematics
    blue: SideStochastics
    red: SideStochastics
    tof_convention: TofConvention = TofConvention.CLOSURE_RATE


@dataclass(frozen=True)
class RangeAdvantageResult:
    """Margin-variable mean/sd and the probability its sign favors blue."""

    mu: float
    sigma: float
    probability: float


@dataclass(frozen=True)
class DuelWinResult:
    """Win/lose/mutual probabilities of a single-missile duel.

    ``p_mutual_kill`` is the complement of the two win probabilities and
    can leave [0, 1] when the win events overlap; ``mutual_in_unit_range``
    flags that instead of clamping.
    """

    p_blue_win: float
    p_red_win: float
    p_mutual_kill: float
    blue_margin: RangeAdvantageResult
    red_margin: RangeAdvantageResult
    mutual_in_unit_range: bool


@dataclass(frozen=True)
class ScenarioFactors:
    """Shared per-scenario quantities needed by both the closed forms and
    the Monte Carlo classifier: closure rate and each side's reach factor.

    The reach factor maps a launch range to the blue-red separation left
    when that side's missile arrives: separation = factor * launch_range.
    It is 1 minus the shooter's flight-distance share times the ratio of
    aircraft closure to the time-of-flight denominator.
    """

    v_closure: float
    blue_factor: float
    red_factor: float


def _reach_factor(line: ShotLine, v_closure: float, convention: TofConvention) -> float:
    denom = line.closure_rate if convention is TofConvention.CLOSURE_RATE else line.speed
    return 1.0 - line.sine_ratio * v_closure / denom


def scenario_factors(scenario: EngagementScenario) -> ScenarioFactors:
    """Closure rate and both reach factors; raises if either side's
    geometry admits no intercept."""
    kin = scenario.kinematics
    aircraft = shot_line(kin.v_blue, kin.v_red, kin.rho)
    blue_shot = shot_line(kin.v_blue, kin.v_red, kin.rho, kin.v_missile_blue)
    # Red shoots back along the same LOS; its target heading is blue's lead.
    red_shot = shot_line(kin.v_red, kin.v_blue, lead_angle(kin), kin.v_missile_red)
    v_c = aircraft.closure_rate
    return ScenarioFactors(
        v_closure=v_c,
        blue_factor=_reach_factor(blue_shot, v_c, scenario.tof_convention),
        red_factor=_reach_factor(red_shot, v_c, scenario.tof_convention),
    )


def launch_range_distribution(side: SideStochastics, v_closure: float) -> GaussianSpec:
    """Distribution of the range remaining at this side's missile launch.

    The detection range shrinks by closure times the launch delay; with
    both Gaussian and independent the result is Gaussian with the
    variances summed.  A nonpositive mean launch range is allowed but
    warned about.
    """
    mean = side.detection.mean - v_closure * side.launch_delay.mean
    sd = math.hypot(side.detection.sd, v_closure * side.launch_delay.sd)
    if mean <= 0.0:
        warnings.warn(
            f"mean launch range {mean:.6g} m is not positive; the scenario "
            "likely closes past merge before launch",
            ModelWarning,
            stacklevel=2,
        )
    return GaussianSpec(mean=mean, sd=sd)


def _first_kill(scenario: EngagementScenario, acquisition: GaussianSpec | None
                ) -> RangeAdvantageResult:
    factors = scenario_factors(scenario)
    blue_launch = launch_range_distribution(scenario.blue, factors.v_closure)
    red_launch = launch_range_distribution(scenario.red, factors.v_closure)
    g = factors.blue_factor
    acq_mean = acquisition.mean if acquisition is not None else 0.0
    acq_var = acquisition.sd ** 2 if acquisition is not None else 0.0
    mu = g * (blue_launch.mean + acq_mean) - red_launch.mean
    sigma = math.sqrt(g * g * (blue_launch.sd ** 2 + acq_var) + red_launch.sd ** 2)
    return RangeAdvantageResult(mu=mu, sigma=sigma,
                                probability=gaussian_exceedance(mu, sigma))


def sar_first_kill(scenario: EngagementScenario) -> RangeAdvantageResult:
    """Probability blue's semi-active shot kills red before red reaches
    launch range.

    The margin is blue's kill separation minus red's launch separation;
    blue succeeds when it is positive.
    """
    return _first_kill(scenario, None)


def ar_first_kill(scenario: EngagementScenario) -> RangeAdvantageResult:
    """Probability blue's active-seeker shot acquires red before red
    reaches launch range.

    With an active seeker blue only supports the missile to acquisition,
    which pushes the decisive event earlier: the acquisition range enters
    blue's term of the margin.  Degenerates to the semi-active result for
    a zero acquisition spec.
    """
    return _first_kill(scenario, scenario.blue.require_acquisition())


def duel_outcomes(scenario: EngagementScenario) -> DuelWinResult:
    """Win/lose/mutual-kill probabilities of a both-sides-active duel.

    Blue wins when its kill separation exceeds red's acquisition
    separation (the blue margin is positive); red wins symmetrically
    (the red margin is negative).  The mutual kill is everything else by
    construction, so the three probabilities sum to one.
    """
    blue_acq = scenario.blue.require_acquisition()
    red_acq = scenario.red.require_acquisition()
    factors = scenario_factors(scenario)
    blue_launch = launch_range_distribution(scenario.blue, factors.v_closure)
    red_launch = launch_range_distribution(scenario.red, factors.v_closure)
    g_b, g_r = factors.blue_factor, factors.red_factor

    mu_blue = g_b * blue_launch.mean - g_r * (red_launch.mean + red_acq.mean)
    sigma_blue = math.sqrt(
        g_b * g_b * blue_launch.sd ** 2
        + g_r * g_r * (red_launch.sd ** 2 + red_acq.sd ** 2)
    )
    mu_red = g_b * (blue_launch.mean + blue_acq.mean) - g_r * red_launch.mean
    sigma_red = math.sqrt(
        g_b * g_b * (blue_launch.sd ** 2 + blue_acq.sd ** 2)
        + g_r * g_r * red_launch.sd ** 2
    )

    p_blue_win = gaussian_exceedance(mu_blue, sigma_blue)
    p_red_win = gaussian_exceedance(-mu_red, sigma_red)
    p_mutual = 1.0 - (p_blue_win + p_red_win)
    return DuelWinResult(
        p_blue_win=p_blue_win,
        p_red_win=p_red_win,
        p_mutual_kill=p_mutual,
        blue_margin=RangeAdvantageResult(mu_blue, sigma_blue, p_blue_win),
        red_margin=RangeAdvantageResult(mu_red, sigma_red, p_red_win),
        mutual_in_unit_range=0.0 <= p_mutual <= 1.0,
    )
