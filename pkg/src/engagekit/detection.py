"""Simulated sensor-fusion detection pipeline over scripted sensor traces.

A trace is an ordered list of frames from a sweeping ultrasonic ranger
(servo angle 15..165 degrees, echo time in microseconds) with a smoke
analog channel and a metal-contact flag.  Classification is an AND ladder
over the cues: a sonar return inside the watch range makes a moving
object; smoke coincident with a detection upgrades it; coincident metal
on top of both classifies a missile.  Adding a cue can only raise the
verdict.

Positions are polar: the beam direction at servo angle theta is
(cos theta, sin theta) in the sweep plane, so 90 degrees points straight
out.  Headings are compass-style relative to that boresight: 0 degrees is
straight out along +y, positive clockwise toward +x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

SMOKE_THRESHOLD_DEFAULT = 400
MAX_RANGE_CM_DEFAULT = 40.0
COINCIDENCE_WINDOW_S_DEFAULT = 1.0

_SOUND_CM_PER_US = 0.034  # two-way echo: half of this per microsecond


class InsufficientData(ValueError):
    """Too few detections to estimate kinematics."""


class DetectionClass(Enum):
    NO_OBJECT = "no_object"
    MOVING_OBJECT = "moving_object"
    SMOKE_BEARING_OBJECT = "smoke_bearing_object"
    MISSILE_CLASSIFIED = "missile_classified"


@dataclass(frozen=True)
class SensorFrame:
    """One sweep sample; angles outside the servo's 15..165 degree range
    are rejected at construction."""

    timestamp: float
    servo_angle: float
    echo_duration_us: float
    smoke_analog: int
    metal_flag: bool

    def __post_init__(self) -> None:
        if not 15.0 <= self.servo_angle <= 165.0:
            raise ValueError(
                f"servo_angle {self.servo_angle!r} outside the sweep range [15, 165]"
            )
        if self.echo_duration_us < 0.0:
            raise ValueError("echo_duration_us must be nonnegative")
        if not 0 <= self.smoke_analog <= 1023:
            raise ValueError("smoke_analog must be a 10-bit reading (0..1023)")


@dataclass(frozen=True)
class TrackEstimate:
    range_cm: float
    speed_cm_s: float
    heading_deg: float


@dataclass(frozen=True)
class DetectionVerdict:
    classification: DetectionClass
    estimated_range: float | None = None
    estimated_speed: float | None = None
    estimated_heading: float | None = None


def sonar_distance(echo_duration_us: float) -> float:
    """Target distance in cm from the two-way ultrasonic echo time."""
    if echo_duration_us < 0.0:
        raise ValueError("echo duration must be nonnegative")
    return echo_duration_us * _SOUND_CM_PER_US / 2.0


def smoke_alarm(smoke_analog: int, threshold: int = SMOKE_THRESHOLD_DEFAULT) -> bool:
    """True when the analog smoke reading strictly exceeds the threshold."""
    return smoke_analog > threshold


def _position(frame: SensorFrame) -> tuple[float, float]:
    distance = sonar_distance(frame.echo_duration_us)
    angle = math.radians(frame.servo_angle)
    return distance * math.cos(angle), distance * math.sin(angle)


def _detections(frames: list[SensorFrame], max_range_cm: float) -> list[SensorFrame]:
    return [f for f in frames if sonar_distance(f.echo_duration_us) < max_range_cm]


def track_object(
    frames: list[SensorFrame],
    max_range_cm: float = MAX_RANGE_CM_DEFAULT,
) -> TrackEstimate:
    """Range, speed and heading estimates from the detected frames.

    Speed is the mean of the finite-difference speeds over consecutive
    detections; the heading comes from the last displacement, compass
    convention (0 = outbound along the boresight, clockwise positive);
    the range is the last detection's.  Needs at least two detections.
    """
    detected = _detections(frames, max_range_cm)
    if len(detected) < 2:
        raise InsufficientData(
            f"need at least 2 detections to track, got {len(detected)}"
        )
    positions = [_position(f) for f in detected]
    times = [f.timestamp for f in detected]
    speeds = []
    for i in range(1, len(detected)):
        dt = times[i] - times[i - 1]
        if dt <= 0.0:
            raise ValueError("frame timestamps must be strictly increasing")
        dx = positions[i][0] - positions[i - 1][0]
        dy = positions[i][1] - positions[i - 1][1]
        speeds.append(math.hypot(dx, dy) / dt)
    dx = positions[-1][0] - positions[-2][0]
    dy = positions[-1][1] - positions[-2][1]
    return TrackEstimate(
        range_cm=sonar_distance(detected[-1].echo_duration_us),
        speed_cm_s=sum(speeds) / len(speeds),
        heading_deg=math.degrees(math.atan2(dx, dy)),
    )


def _coincident(times_a: list[float], times_b: list[float], window: float) -> bool:
    return any(abs(a - b) <= window for a in times_a for b in times_b)


def classify(
    frames: list[SensorFrame],
    max_range_cm: float = MAX_RANGE_CM_DEFAULT,
    window_s: float = COINCIDENCE_WINDOW_S_DEFAULT,
    smoke_threshold: int = SMOKE_THRESHOLD_DEFAULT,
) -> DetectionVerdict:
    """AND-ladder verdict over the trace's cues.

    Sonar detection alone yields a moving object; smoke within the
    coincidence window of a detection upgrades it to smoke-bearing;
    coincident metal on top of that classifies a missile.  Kinematics are
    attached whenever two or more detections allow them.
    """
    detected = _detections(frames, max_range_cm)
    if not detected:
        return DetectionVerdict(DetectionClass.NO_OBJECT)
    det_times = [f.timestamp for f in detected]
    smoke_times = [
        f.timestamp for f in frames if smoke_alarm(f.smoke_analog, smoke_threshold)
    ]
    metal_times = [f.timestamp for f in frames if f.metal_flag]

    classification = DetectionClass.MOVING_OBJECT
    if _coincident(smoke_times, det_times, window_s):
        classification = DetectionClass.SMOKE_BEARING_OBJECT
        if _coincident(metal_times, det_times, window_s):
            classification = DetectionClass.MISSILE_CLASSIFIED

    if len(detected) >= 2:
        track = track_object(frames, max_range_cm)
        return DetectionVerdict(
            classification,
            estimated_range=track.range_cm,
            estimated_speed=track.speed_cm_s,
            estimated_heading=track.heading_deg,
        )
    return DetectionVerdict(
        classification,
        estimated_range=sonar_distance(detected[-1].echo_duration_us),
    )


def parse_trace(text: str) -> list[SensorFrame]:
    """Parse the line-delimited trace format.

    One frame per line: ``timestamp,servo_angle,echo_duration_us,
    smoke_analog,metal_flag`` with ``#`` comments and blank lines ignored;
    the metal flag is 0 or 1.  Timestamps must be strictly increasing.
    """
    frames: list[SensorFrame] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 5:
            raise ValueError(
                f"trace line {lineno}: expected 5 comma-separated fields, got {len(parts)}"
            )
        try:
            frame = SensorFrame(
                timestamp=float(parts[0]),
                servo_angle=float(parts[1]),
                echo_duration_us=float(parts[2]),
                smoke_analog=int(parts[3]),
                metal_flag=bool(int(parts[4])),
            )
        except ValueError as exc:
            raise ValueError(f"trace line {lineno}: {exc}") from exc
        if frames and frame.timestamp <= frames[-1].timestamp:
            raise ValueError(
                f"trace line {lineno}: timestamps must be strictly increasing"
            )
        frames.append(frame)
    return frames


def load_trace(path: str) -> list[SensorFrame]:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_trace(handle.read())
