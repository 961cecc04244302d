"""JSON scenario files: one analysis section plus an optional Monte Carlo
block, parsed strictly (unknown keys are rejected everywhere).

Angles cross the file boundary in degrees by default (radians internally);
pass ``angles="radians"`` to switch.  The time-of-flight convention uses
the tokens ``paper`` (flight distance over closure rate, the default) and
``kinematic`` (path length over missile speed).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .advantage import (
    EngagementScenario,
    GaussianSpec,
    SeekerMode,
    SideStochastics,
)
from .detection import SensorFrame, load_trace
from .exchange import DuelMode, DuelParams, FirstShooter, NvnParams, SalvoParams
from .geometry import Kinematics, TofConvention
from .montecarlo import McConfig
from .pursuit import PursuitScenario
from .radar import PulseParams, SnrParams

ANALYSIS_KINDS = (
    "salvo", "duel", "nvn", "geometry", "range_advantage",
    "pursuit", "radar", "detect",
)

TOF_TOKENS = {
    "paper": TofConvention.CLOSURE_RATE,
    "kinematic": TofConvention.MISSILE_SPEED,
}


class ScenarioParseError(Exception):
    """Unreadable file or malformed JSON."""


class ScenarioValidationError(Exception):
    """Structurally valid JSON that violates the scenario schema."""


@dataclass(frozen=True)
class GeometryPlan:
    kinematics: Kinematics
    launch_range: float
    tof_convention: TofConvention


@dataclass(frozen=True)
class RadarPlan:
    pulse: PulseParams
    target_ranges: tuple[float, ...]
    range_velocities: tuple[float, ...]
    snr_params: SnrParams | None


@dataclass(frozen=True)
class DetectPlan:
    frames: tuple[SensorFrame, ...]
    max_range_cm: float
    window_s: float
    smoke_threshold: int


@dataclass(frozen=True)
class Scenario:
    kind: str
    payload: object
    monte_carlo: McConfig | None
    sha256: str


def _mapping(value: object, ctx: str) -> dict:
    if not isinstance(value, dict):
        raise ScenarioValidationError(f"{ctx}: expected an object")
    return value


def _check_keys(section: dict, ctx: str, required: set[str], optional: set[str] = frozenset()) -> None:
    unknown = set(section) - required - set(optional)
    if unknown:
        raise ScenarioValidationError(f"{ctx}: unknown keys {sorted(unknown)}")
    missing = required - set(section)
    if missing:
        raise ScenarioValidationError(f"{ctx}: missing keys {sorted(missing)}")


def _number(section: dict, ctx: str, key: str) -> float:
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioValidationError(f"{ctx}.{key}: expected a number")
    return float(value)


def _integer(section: dict, ctx: str, key: str) -> int:
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioValidationError(f"{ctx}.{key}: expected an integer")
    return value


def _string(section: dict, ctx: str, key: str) -> str:
    value = section[key]
    if not isinstance(value, str):
        raise ScenarioValidationError(f"{ctx}.{key}: expected a string")
    return value


def _angle(section: dict, ctx: str, key: str, angles: str) -> float:
    raw = _number(section, ctx, key)
    return math.radians(raw) if angles == "degrees" else raw


def _point(value: object, ctx: str) -> tuple[float, float]:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in value)
    ):
        raise ScenarioValidationError(f"{ctx}: expected a [x, y] number pair")
    return float(value[0]), float(value[1])


def _wrap_domain_error(ctx: str, exc: ValueError) -> ScenarioValidationError:
    return ScenarioValidationError(f"{ctx}: {exc}")


def _build_salvo(section: dict, angles: str) -> SalvoParams:
    ctx = "salvo"
    _check_keys(section, ctx, {"p_kill", "shots"})
    try:
        return SalvoParams(_number(section, ctx, "p_kill"), _integer(section, ctx, "shots"))
    except ValueError as exc:
        raise _wrap_domain_error(ctx, exc) from exc


def _build_duel(section: dict, angles: str) -> DuelParams:
    ctx = "duel"
    _check_keys(section, ctx, {"p_blue", "p_red", "rounds"}, {"first_shooter", "mode"})
    first = section.get("first_shooter", "blue")
    mode = section.get("mode", "sequential")
    try:
        return DuelParams(
            p_blue=_number(section, ctx, "p_blue"),
            p_red=_number(section, ctx, "p_red"),
            rounds=_integer(section, ctx, "rounds"),
            first_shooter=FirstShooter(first),
            mode=DuelMode(mode),
        )
    except ValueError as exc:
        raise _wrap_domain_error(ctx, exc) from exc


def _build_nvn(section: dict, angles: str) -> NvnParams:
    ctx = "nvn"
    _check_keys(section, ctx, {"p_kill", "weapons_per_attacker", "attackers", "targets"})
    try:
        return NvnParams(
            p_kill=_number(section, ctx, "p_kill"),
            weapons_per_attacker=_integer(section, ctx, "weapons_per_attacker"),
            attackers=_integer(section, ctx, "attackers"),
            targets=_integer(section, ctx, "targets"),
        )
    except ValueError as exc:
        raise _wrap_domain_error(ctx, exc) from exc


def _build_kinematics(section: dict, ctx: str, angles: str) -> Kinematics:
    _check_keys(section, ctx, {"v_blue", "v_red", "rho"},
                {"v_missile_blue", "v_missile_red"})
    try:
        return Kinematics(
            v_blue=_number(section, ctx, "v_blue"),
            v_red=_number(section, ctx, "v_red"),
            rho=_angle(section, ctx, "rho", angles),
            v_missile_blue=(
                _number(section, ctx, "v_missile_blue")
                if "v_missile_blue" in section else 0.0
            ),
            v_missile_red=(
                _number(section, ctx, "v_missile_red")
                if "v_missile_red" in section else 0.0
            ),
        )
    except ValueError as exc:
        raise _wrap_domain_error(ctx, exc) from exc


def _tof(section: dict, ctx: str) -> TofConvention:
    token = section.get("tof_convention", "paper")
    if token not in TOF_TOKENS:
        raise ScenarioValidationError(
            f"{ctx}.tof_convention: expected one of {sorted(TOF_TOKENS)}, got {token!r}"
        )
    return TOF_TOKENS[token]


def _build_geometry(section: dict, angles: str) -> GeometryPlan:
    ctx = "geometry"
    _check_keys(
        section, ctx, {"v_blue", "v_red", "rho", "launch_range"},
        {"v_missile_blue", "v_missile_red", "tof_convention"},
    )
    kin_keys = {k: v for k, v in section.items()
                if k not in ("launch_range", "tof_convention")}
    kinematics = _build_kinematics(kin_keys, ctx, angles)
    launch_range = _number(section, ctx, "launch_range")
    if launch_range <= 0.0:
        raise ScenarioValidationError(f"{ctx}.launch_range: must be positive")
    return GeometryPlan(kinematics, launch_range, _tof(section, ctx))


def _build_gaussian(value: object, ctx: str) -> GaussianSpec:
    section = _mapping(value, ctx)
    _check_keys(section, ctx, {"mean", "sd"})
    try:
        return GaussianSpec(_number(section, ctx, "mean"), _number(section, ctx, "sd"))
    except ValueError as exc:
        raise _wrap_domain_error(ctx, exc) from exc


def _build_side(value: object, ctx: str) -> SideStochastics:
    section = _mapping(value, ctx)
    _check_keys(section, ctx, {"detection", "launch_delay", "seeker"},
                {"seeker_acquisition"})
    seeker_token = _string(section, ctx, "seeker")
    try:
        seeker = SeekerMode(seeker_token)
    except ValueError as exc:
        raise ScenarioValidationError(
            f"{ctx}.seeker: expected 'sar' or 'ar', got {seeker_token!r}"
        ) from exc
    acquisition = None
    if seeker is SeekerMode.ACTIVE:
        if "seeker_acquisition" not in section:
            raise ScenarioValidationError(
                f"{ctx}: an active ('ar') seeker requires seeker_acquisition"
            )
        acquisition = _build_gaussian(
            section["seeker_acquisition"], f"{ctx}.seeker_acquisition"
        )
    elif "seeker_acquisition" in section:
        raise ScenarioValidationError(
            f"{ctx}: seeker_acquisition is only meaningful for an 'ar' seeker"
        )
    return SideStochastics(
        detection=_build_gaussian(section["detection"], f"{ctx}.detection"),
        launch_delay=_build_gaussian(section["launch_delay"], f"{ctx}.launch_delay"),
        seeker=seeker,
        seeker_acquisition=acquisition,
    )


def _build_range_advantage(section: dict, angles: str) -> EngagementScenario:
    ctx = "range_advantage"
    _check_keys(section, ctx, {"kinematics", "blue", "red"}, {"tof_convention"})
    kinematics = _build_kinematics(
        _mapping(section["kinematics"], f"{ctx}.kinematics"),
        f"{ctx}.kinematics", angles,
    )
    return EngagementScenario(
        kinematics=kinematics,
        blue=_build_side(section["blue"], f"{ctx}.blue"),
        red=_build_side(section["red"], f"{ctx}.red"),
        tof_convention=_tof(section, ctx),
    )


def _build_pursuit(section: dict, angles: str) -> PursuitScenario:
    ctx = "pursuit"
    _check_keys(section, ctx,
                {"waypoints", "follower_start", "follower_speed", "kill_radius"})
    waypoints = section["waypoints"]
    if not isinstance(waypoints, list) or not waypoints:
        raise ScenarioValidationError(f"{ctx}.waypoints: expected a nonempty list")
    try:
        return PursuitScenario(
            waypoints=tuple(
                _point(w, f"{ctx}.waypoints[{i}]") for i, w in enumerate(waypoints)
            ),
            follower_start=_point(section["follower_start"], f"{ctx}.follower_start"),
            follower_speed=_number(section, ctx, "follower_speed"),
            kill_radius=_number(section, ctx, "kill_radius"),
        )
    except ValueError as exc:
        raise _wrap_domain_error(ctx, exc) from exc


def _number_list(value: object, ctx: str) -> tuple[float, ...]:
    if not isinstance(value, list):
        raise ScenarioValidationError(f"{ctx}: expected a list of numbers")
    out = []
    for i, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ScenarioValidationError(f"{ctx}[{i}]: expected a number")
        out.append(float(v))
    return tuple(out)


def _build_radar(section: dict, angles: str) -> RadarPlan:
    ctx = "radar"
    _check_keys(section, ctx, {"prf", "n_bins", "f_tx"},
                {"target_ranges", "range_velocities", "snr"})
    try:
        pulse = PulseParams(
            prf=_number(section, ctx, "prf"),
            n_bins=_integer(section, ctx, "n_bins"),
            f_tx=_number(section, ctx, "f_tx"),
        )
    except ValueError as exc:
        raise _wrap_domain_error(ctx, exc) from exc
    snr_params = None
    if "snr" in section:
        snr_section = _mapping(section["snr"], f"{ctx}.snr")
        keys = {
            "transmit_power", "transmit_gain", "aperture_area", "cross_section",
            "pulse_duration", "range_m", "noise_temperature", "losses",
        }
        _check_keys(snr_section, f"{ctx}.snr", keys)
        try:
            snr_params = SnrParams(
                **{k: _number(snr_section, f"{ctx}.snr", k) for k in keys}
            )
        except ValueError as exc:
            raise _wrap_domain_error(f"{ctx}.snr", exc) from exc
    return RadarPlan(
        pulse=pulse,
        target_ranges=_number_list(section.get("target_ranges", []),
                                   f"{ctx}.target_ranges"),
        range_velocities=_number_list(section.get("range_velocities", []),
                                      f"{ctx}.range_velocities"),
        snr_params=snr_params,
    )


def _build_detect(section: dict, angles: str, base_dir: Path) -> DetectPlan:
    ctx = "detect"
    _check_keys(section, ctx, set(),
                {"trace_file", "frames", "max_range_cm", "window_s", "smoke_threshold"})
    has_file = "trace_file" in section
    has_frames = "frames" in section
    if has_file == has_frames:
        raise ScenarioValidationError(
            f"{ctx}: exactly one of trace_file or frames is required"
        )
    try:
        if has_file:
            path = base_dir / _string(section, ctx, "trace_file")
            frames = tuple(load_trace(str(path)))
        else:
            records = section["frames"]
            if not isinstance(records, list):
                raise ScenarioValidationError(f"{ctx}.frames: expected a list")
            frames = []
            for i, rec in enumerate(records):
                if not isinstance(rec, list) or len(rec) != 5:
                    raise ScenarioValidationError(
                        f"{ctx}.frames[{i}]: expected "
                        "[timestamp, angle, duration_us, smoke, metal]"
                    )
                frames.append(SensorFrame(
                    timestamp=float(rec[0]),
                    servo_angle=float(rec[1]),
                    echo_duration_us=float(rec[2]),
                    smoke_analog=int(rec[3]),
                    metal_flag=bool(rec[4]),
                ))
            frames = tuple(frames)
    except OSError as exc:
        raise ScenarioParseError(f"{ctx}.trace_file: {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ScenarioValidationError(f"{ctx}: {exc}") from exc
    return DetectPlan(
        frames=frames,
        max_range_cm=(
            _number(section, ctx, "max_range_cm")
            if "max_range_cm" in section else 40.0
        ),
        window_s=_number(section, ctx, "window_s") if "window_s" in section else 1.0,
        smoke_threshold=(
            _integer(section, ctx, "smoke_threshold")
            if "smoke_threshold" in section else 400
        ),
    )


_BUILDERS = {
    "salvo": _build_salvo,
    "duel": _build_duel,
    "nvn": _build_nvn,
    "geometry": _build_geometry,
    "range_advantage": _build_range_advantage,
    "pursuit": _build_pursuit,
    "radar": _build_radar,
}


def _build_monte_carlo(value: object) -> McConfig:
    section = _mapping(value, "monte_carlo")
    _check_keys(section, "monte_carlo", {"samples", "seed"})
    try:
        return McConfig(
            samples=_integer(section, "monte_carlo", "samples"),
            seed=_integer(section, "monte_carlo", "seed"),
        )
    except ValueError as exc:
        raise _wrap_domain_error("monte_carlo", exc) from exc


def build_scenario(
    document: dict,
    sha256: str,
    angles: str = "degrees",
    base_dir: Path | None = None,
) -> Scenario:
    """Validate a parsed scenario document and build the typed payload."""
    if angles not in ("degrees", "radians"):
        raise ValueError(f"angles must be 'degrees' or 'radians', got {angles!r}")
    top = _mapping(document, "scenario")
    kinds = [k for k in top if k in ANALYSIS_KINDS]
    unknown = set(top) - set(ANALYSIS_KINDS) - {"monte_carlo"}
    if unknown:
        raise ScenarioValidationError(f"scenario: unknown keys {sorted(unknown)}")
    if len(kinds) != 1:
        raise ScenarioValidationError(
            f"scenario: exactly one analysis section required, got {kinds or 'none'}"
        )
    kind = kinds[0]
    section = _mapping(top[kind], kind)
    if kind == "detect":
        payload = _build_detect(section, angles, base_dir or Path("."))
    else:
        payload = _BUILDERS[kind](section, angles)
    monte_carlo = (
        _build_monte_carlo(top["monte_carlo"]) if "monte_carlo" in top else None
    )
    return Scenario(kind=kind, payload=payload, monte_carlo=monte_carlo, sha256=sha256)


def load_scenario(path: str, angles: str = "degrees") -> Scenario:
    """Read, hash, parse and validate a scenario file."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise ScenarioParseError(f"cannot read scenario file: {exc}") from exc
    try:
        document = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ScenarioParseError(f"invalid scenario JSON: {exc}") from exc
    return build_scenario(
        document,
        sha256=hashlib.sha256(raw).hexdigest(),
        angles=angles,
        base_dir=Path(path).resolve().parent,
    )
