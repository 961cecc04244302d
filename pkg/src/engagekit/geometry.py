"""Planar collision-course intercept geometry.

Conventions: the line of sight (LOS) runs from blue to red; all headings
are measured from it in radians.  ``rho`` is the target (red) heading,
the lead angle is the chaser's heading, and the collision angle closes
the triangle (pi minus the other two).  On a collision course the lateral
velocity components cancel, so the closure rate equals the sum of the two
LOS-projected speeds; the law-of-cosines form is used for returned values
and the projection supplies the sign check for validity.

Missile shots fly at the launcher's speed plus the missile's own, on a
straight lead-collision line against the same target.  Their flight
distance is the sine-ratio share of the launch range; the two removable
0/0 limits of that ratio (head-on and tail chase) are patched
analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

# |sin(collision angle)| below this is treated as the removable 0/0 of the
# flight-distance ratio and replaced by its analytic limit.
_DEGENERATE_SINE = 1e-9


class NoInterceptSolution(ValueError):
    """No constant-heading collision course exists for the given speeds."""


class TofConvention(Enum):
    """How missile time of flight is derived from its flight distance.

    CLOSURE_RATE divides the flight distance by the missile-target closure
    rate (the default); MISSILE_SPEED divides the path length by the speed
    the missile actually flies it at.  The two agree only for a stationary
    target; both are offered because each is defensible and they bracket
    the modeling choice.
    """

    CLOSURE_RATE = "closure_rate"
    MISSILE_SPEED = "missile_speed"


@dataclass(frozen=True)
class Kinematics:
    """Speeds (m/s) and red's heading off the LOS (radians, in [0, pi]).

    Missile speeds are the base figures before the launcher's speed is
    added and may be zero for aircraft-only computations.
    """

    v_blue: float
    v_red: float
    rho: float
    v_missile_blue: float = 0.0
    v_missile_red: float = 0.0

    def __post_init__(self) -> None:
        if self.v_blue <= 0.0 or self.v_red <= 0.0:
            raise ValueError("aircraft speeds must be positive")
        if not 0.0 <= self.rho <= math.pi:
            raise ValueError(f"rho must lie in [0, pi], got {self.rho!r}")
        if self.v_missile_blue < 0.0 or self.v_missile_red < 0.0:
            raise ValueError("missile speeds must be nonnegative")


@dataclass(frozen=True)
class ShotLine:
    """Collision-course solution for one shooter against one target."""

    lead_angle: float
    collision_angle: float
    closure_rate: float
    sine_ratio: float
    speed: float


@dataclass(frozen=True)
class MissileLine:
    """Blue-missile shot line plus its flight distance for a launch range."""

    lead_angle: float
    collision_angle: float
    closure_rate: float
    sine_ratio: float
    flight_distance: float


@dataclass(frozen=True)
class InterceptSolution:
    """Aggregate aircraft and blue-missile collision-course quantities."""

    lead_angle: float
    collision_angle: float
    closure_rate: float
    missile_lead_angle: float
    missile_collision_angle: float
    missile_closure_rate: float
    sine_ratio: float


@dataclass(frozen=True)
class SeparationResult:
    """Post-intercept bookkeeping for a missile shot at ``launch_range``."""

    time_of_flight: float
    los_travel: float
    separation: float


def _lead_angle(chaser_speed: float, target_speed: float, target_heading: float) -> float:
    arg = target_speed / chaser_speed * math.sin(target_heading)
    if arg > 1.0:
        raise NoInterceptSolution(
            f"target lateral speed exceeds chaser capability (sine argument {arg:.6g})"
        )
    return math.asin(arg)


def _sine_ratio(
    target_heading: float, collision_angle: float, chaser_speed: float, target_speed: float
) -> float:
    """sin(target heading) / sin(collision angle) with limit handling.

    Both sines vanish together head-on (collision angle near pi) and in a
    tail chase (near 0); the analytic limits are the chaser's share of the
    combined speed and of the speed difference, respectively.
    """
    sin_collision = math.sin(collision_angle)
    if abs(sin_collision) < _DEGENERATE_SINE:
        if target_heading < math.pi / 2.0:
            return chaser_speed / (chaser_speed + target_speed)
        return chaser_speed / (chaser_speed - target_speed)
    return math.sin(target_heading) / sin_collision


def shot_line(
    chaser_speed: float,
    target_speed: float,
    target_heading: float,
    missile_speed: float = 0.0,
) -> ShotLine:
    """Collision course of one chaser (or its missile) against one target.

    With a nonzero ``missile_speed`` the line is solved for the missile at
    the launcher's speed plus its own.  Raises NoInterceptSolution when the
    lead angle does not exist or the geometry closes no range.
    """
    speed = chaser_speed + missile_speed
    lead = _lead_angle(speed, target_speed, target_heading)
    collision = math.pi - target_heading - lead
    projection = speed * math.cos(lead) + target_speed * math.cos(target_heading)
    if projection <= 0.0:
        raise NoInterceptSolution(
            "geometry closes no range (LOS-projected closure "
            f"{projection:.6g} m/s is not positive)"
        )
    closure = math.sqrt(
        speed * speed
        + target_speed * target_speed
        - 2.0 * speed * target_speed * math.cos(collision)
    )
    return ShotLine(
        lead_angle=lead,
        collision_angle=collision,
        closure_rate=closure,
        sine_ratio=_sine_ratio(target_heading, collision, speed, target_speed),
        speed=speed,
    )


def lead_angle(kin: Kinematics) -> float:
    """Blue heading off the LOS that cancels red's lateral velocity."""
    return _lead_angle(kin.v_blue, kin.v_red, kin.rho)


def closure_rate(kin: Kinematics, lead: float) -> float:
    """Rate of LOS-range decrease for blue flying the given lead angle."""
    collision = math.pi - kin.rho - lead
    projection = kin.v_blue * math.cos(lead) + kin.v_red * math.cos(kin.rho)
    if projection <= 0.0:
        raise NoInterceptSolution(
            f"geometry closes no range (projected closure {projection:.6g} m/s)"
        )
    return math.sqrt(
        kin.v_blue * kin.v_blue
        + kin.v_red * kin.v_red
        - 2.0 * kin.v_blue * kin.v_red * math.cos(collision)
    )


def missile_line(kin: Kinematics, launch_range: float) -> MissileLine:
    """Straight-line blue-missile solution for a launch at ``launch_range``."""
    if launch_range <= 0.0:
        raise ValueError(f"launch_range must be positive, got {launch_range!r}")
    line = shot_line(kin.v_blue, kin.v_red, kin.rho, kin.v_missile_blue)
    return MissileLine(
        lead_angle=line.lead_angle,
        collision_angle=line.collision_angle,
        closure_rate=line.closure_rate,
        sine_ratio=line.sine_ratio,
        flight_distance=line.sine_ratio * launch_range,
    )


def solve_intercept(kin: Kinematics) -> InterceptSolution:
    """Aircraft collision course plus the blue-missile line in one record."""
    aircraft = shot_line(kin.v_blue, kin.v_red, kin.rho)
    missile = shot_line(kin.v_blue, kin.v_red, kin.rho, kin.v_missile_blue)
    return InterceptSolution(
        lead_angle=aircraft.lead_angle,
        collision_angle=aircraft.collision_angle,
        closure_rate=aircraft.closure_rate,
        missile_lead_angle=missile.lead_angle,
        missile_collision_angle=missile.collision_angle,
        missile_closure_rate=missile.closure_rate,
        sine_ratio=missile.sine_ratio,
    )


def time_of_flight(line: ShotLine, flight_distance: float,
                   convention: TofConvention) -> float:
    """Missile time of flight under the selected convention."""
    if convention is TofConvention.CLOSURE_RATE:
        return flight_distance / line.closure_rate
    return flight_distance / line.speed


def post_intercept_separation(
    kin: Kinematics,
    launch_range: float,
    tof_convention: TofConvention = TofConvention.CLOSURE_RATE,
) -> SeparationResult:
    """Blue-red separation remaining when the blue missile reaches red.

    During the missile's flight the launcher keeps closing at the aircraft
    closure rate; the separation is the launch range minus that travel.
    """
    if launch_range <= 0.0:
        raise ValueError(f"launch_range must be positive, got {launch_range!r}")
    line = shot_line(kin.v_blue, kin.v_red, kin.rho, kin.v_missile_blue)
    flight_distance = line.sine_ratio * launch_range
    tof = time_of_flight(line, flight_distance, tof_convention)
    aircraft_closure = closure_rate(kin, lead_angle(kin))
    los_travel = tof * aircraft_closure
    return SeparationResult(
        time_of_flight=tof,
        los_travel=los_travel,
        separation=launch_range - los_travel,
    )
