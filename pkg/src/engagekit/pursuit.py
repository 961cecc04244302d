"""Discrete-step pure-pursuit chase of a waypoint-sampled target.

One step per target waypoint: the follower measures the distance to the
current waypoint, records the row, and either scores a kill (strictly
inside the kill radius) or advances by exactly its speed along the unit
vector toward that waypoint.  There is no speed clamping or overshoot
correction, so a follower faster than the geometry demands will overshoot
and oscillate; that behavior is intentional and covered by tests.  Scene
units are abstract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class PursuitVerdict(Enum):
    DESTROYED = "destroyed"
    ESCAPED = "escaped"


@dataclass(frozen=True)
class PursuitScenario:
    waypoints: tuple[tuple[float, float], ...]
    follower_start: tuple[float, float]
    follower_speed: float
    kill_radius: float

    def __post_init__(self) -> None:
        if len(self.waypoints) < 1:
            raise ValueError("at least one waypoint is required")
        if self.follower_speed <= 0.0:
            raise ValueError("follower_speed must be positive")
        if self.kill_radius < 0.0:
            raise ValueError("kill_radius must be nonnegative")


@dataclass(frozen=True)
class PursuitRow:
    """One step of the trace: positions, distance, and the unit direction
    (cos, sin) from follower to the step's waypoint.

    On an exact co-location (distance 0) the direction is undefined and
    recorded as NaN; the kill fires before it is ever needed.
    """

    step: int
    target_x: float
    target_y: float
    follower_x: float
    follower_y: float
    distance: float
    cos: float
    sin: float


@dataclass(frozen=True)
class PursuitTrace:
    rows: tuple[PursuitRow, ...]
    verdict: PursuitVerdict
    steps_used: int


def run_pursuit(scenario: PursuitScenario) -> PursuitTrace:
    """Chase the waypoint list; kill on distance strictly inside the
    radius, escape when waypoints run out.

    The kill check uses the distance measured before the follower moves,
    and a kill ends the trace at that row.  Distance exactly equal to the
    kill radius does not kill.  An exact co-location is resolved as a kill
    even with a zero radius, since no step direction exists there.
    """
    fx, fy = scenario.follower_start
    speed = scenario.follower_speed
    rows: list[PursuitRow] = []
    verdict = PursuitVerdict.ESCAPED
    for step, (tx, ty) in enumerate(scenario.waypoints):
        distance = math.hypot(tx - fx, ty - fy)
        if distance == 0.0:
            rows.append(PursuitRow(step, tx, ty, fx, fy, 0.0,
                                   float("nan"), float("nan")))
            verdict = PursuitVerdict.DESTROYED
            break
        cos = (tx - fx) / distance
        sin = (ty - fy) / distance
        rows.append(PursuitRow(step, tx, ty, fx, fy, distance, cos, sin))
        if distance < scenario.kill_radius:
            verdict = PursuitVerdict.DESTROYED
            break
        fx += speed * cos
        fy += speed * sin
    return PursuitTrace(rows=tuple(rows), verdict=verdict, steps_used=len(rows))


_CSV_HEADER = "step,target_x,target_y,follower_x,follower_y,distance,cos,sin"


def pursuit_csv(trace: PursuitTrace, full_precision: bool = False) -> str:
    """Render the trace as CSV in the row column order.

    By default floats are fixed to two decimals; ``full_precision``
    switches to shortest round-trip formatting.
    """
    fmt = repr if full_precision else (lambda v: f"{v:.2f}")
    lines = [_CSV_HEADER]
    for row in trace.rows:
        cells = [str(row.step)]
        cells += [
            fmt(v)
            for v in (row.target_x, row.target_y, row.follower_x,
                      row.follower_y, row.distance, row.cos, row.sin)
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
