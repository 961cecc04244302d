"""Pulse timing, range binning, Doppler relations, band lookup and the
radar range equation.

The default propagation speed is the round 3e8 m/s so worked numbers come
out exact; pass ``light_speed=LIGHT_SPEED_SI`` for the SI value.  Range
bins are indexed from 0: an echo whose folded delay falls in the i-th
interval of the pulse repetition interval reports index i.  Echoes from
beyond the unambiguous range fold modulo the interval and are flagged
aliased.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LIGHT_SPEED_NOMINAL = 3.0e8
LIGHT_SPEED_SI = 299_792_458.0
BOLTZMANN = 1.380_649e-23


@dataclass(frozen=True)
class PulseParams:
    """Pulse repetition frequency (Hz), bin count, transmit frequency (Hz)."""

    prf: float
    n_bins: int
    f_tx: float

    def __post_init__(self) -> None:
        if self.prf <= 0.0:
            raise ValueError("prf must be positive")
        if not isinstance(self.n_bins, int) or self.n_bins < 1:
            raise ValueError("n_bins must be a positive integer")
        if self.f_tx <= 0.0:
            raise ValueError("f_tx must be positive")


@dataclass(frozen=True)
class SnrParams:
    """Single-pulse signal-to-noise budget terms (SI units)."""

    transmit_power: float
    transmit_gain: float
    aperture_area: float
    cross_section: float
    pulse_duration: float
    range_m: float
    noise_temperature: float
    losses: float

    def __post_init__(self) -> None:
        for name in (
            "transmit_power", "transmit_gain", "aperture_area", "cross_section",
            "pulse_duration", "range_m", "noise_temperature",
        ):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if self.losses < 1.0:
            raise ValueError("losses must be at least 1 (a pure loss factor)")


@dataclass(frozen=True)
class RangeBinResult:
    bin_index: int
    aliased: bool
    folded_delay: float


@dataclass(frozen=True)
class DopplerFold:
    folded: float
    aliased: bool


@dataclass(frozen=True)
class SnrResult:
    linear: float
    db: float


@dataclass(frozen=True)
class BandEntry:
    """One radar band row: frequency bounds in GHz, wavelengths in cm."""

    name: str
    f_low_ghz: float
    f_high_ghz: float
    wavelength_low_cm: float
    wavelength_high_cm: float


# Ascending in frequency; each row owns [low, high) except the top row,
# which is closed so the table covers its upper edge.
BAND_TABLE: tuple[BandEntry, ...] = (
    BandEntry("UHF", 0.3, 1.0, 30.0, 100.0),
    BandEntry("L", 1.0, 2.0, 15.0, 30.0),
    BandEntry("S", 2.0, 4.0, 7.5, 15.0),
    BandEntry("C", 4.0, 8.0, 3.75, 7.5),
    BandEntry("X", 8.0, 12.5, 2.4, 3.75),
    BandEntry("Ku", 12.5, 18.0, 1.7, 2.4),
    BandEntry("K", 18.0, 26.5, 1.1, 1.7),
    BandEntry("Ka", 26.5, 40.0, 0.75, 1.1),
    BandEntry("Millimeter", 40.0, 100.0, 0.30, 0.75),
)


def unambiguous_range(prf: float, light_speed: float = LIGHT_SPEED_NOMINAL) -> float:
    """Largest one-way range whose echo returns before the next pulse."""
    if prf <= 0.0:
        raise ValueError("prf must be positive")
    return light_speed / (2.0 * prf)


def echo_delay(range_m: float, light_speed: float = LIGHT_SPEED_NOMINAL) -> float:
    """Round-trip echo delay in seconds for a one-way range in meters."""
    if range_m < 0.0:
        raise ValueError("range must be nonnegative")
    return 2.0 * range_m / light_speed


# Bin-boundary nudge, in bins: absorbs the few-ulp rounding of delay/PRI
# ratios so delays sitting exactly on a bin edge in real arithmetic land
# in the edge's own (half-open) bin.  A millionth of a bin is far below
# any physical delay resolution.
_BIN_EDGE_NUDGE = 1e-6


def range_bin(
    range_m: float,
    pulse: PulseParams,
    light_speed: float = LIGHT_SPEED_NOMINAL,
) -> RangeBinResult:
    """Bin index of an echo after folding its delay into one pulse interval.

    Ranges beyond the unambiguous range alias into earlier bins; the flag
    records that.  A delay landing exactly on the interval boundary folds
    to zero (bin 0).
    """
    pri = 1.0 / pulse.prf
    delay = echo_delay(range_m, light_speed)
    folded = math.fmod(delay, pri)
    interval_fraction = range_m / unambiguous_range(pulse.prf, light_speed)
    index = int(math.floor(interval_fraction * pulse.n_bins + _BIN_EDGE_NUDGE))
    return RangeBinResult(
        bin_index=index % pulse.n_bins,
        aliased=range_m > unambiguous_range(pulse.prf, light_speed),
        folded_delay=folded,
    )


def wavelength(frequency: float, light_speed: float = LIGHT_SPEED_NOMINAL) -> float:
    """Wavelength in meters of a wave at ``frequency`` Hz."""
    if frequency <= 0.0:
        raise ValueError("frequency must be positive")
    return light_speed / frequency


def doppler_shift(
    f_tx: float,
    range_velocity: float,
    light_speed: float = LIGHT_SPEED_NOMINAL,
) -> float:
    """Two-way Doppler shift in Hz; positive range velocity means closing
    (echo shifted up), receding targets shift down."""
    if f_tx <= 0.0:
        raise ValueError("f_tx must be positive")
    return 2.0 * f_tx * range_velocity / light_speed


def max_unambiguous_doppler(prf: float) -> float:
    """Largest Doppler shift distinguishable at this PRF: the PRF itself
    (the pulse spectrum repeats at that interval)."""
    if prf <= 0.0:
        raise ValueError("prf must be positive")
    return prf


def fold_doppler(shift: float, prf: float) -> DopplerFold:
    """Fold a Doppler shift into [0, PRF); shifts at or beyond the PRF in
    magnitude are flagged aliased."""
    if prf <= 0.0:
        raise ValueError("prf must be positive")
    return DopplerFold(folded=shift % prf, aliased=abs(shift) >= prf)


def snr(params: SnrParams) -> SnrResult:
    """Single-pulse signal-to-noise ratio of the radar range equation.

    Linear in every numerator term and falling with the fourth power of
    range.  The range is raised to the fourth power by explicit squaring
    so power-of-two range scalings stay exact.
    """
    r2 = params.range_m * params.range_m
    r4 = r2 * r2
    numerator = (
        params.transmit_power
        * params.transmit_gain
        * params.aperture_area
        * params.cross_section
        * params.pulse_duration
    )
    four_pi_sq = (4.0 * math.pi) ** 2
    denominator = (
        four_pi_sq * BOLTZMANN * params.noise_temperature * params.losses
    ) * r4
    linear = numerator / denominator
    return SnrResult(linear=linear, db=10.0 * math.log10(linear))


def classify_band(frequency: float) -> BandEntry:
    """Band owning ``frequency`` (Hz) under the half-open row convention."""
    ghz = frequency / 1e9
    top = BAND_TABLE[-1]
    if ghz == top.f_high_ghz:
        return top
    for entry in BAND_TABLE:
        if entry.f_low_ghz <= ghz < entry.f_high_ghz:
            return entry
    raise ValueError(
        f"{ghz:.6g} GHz is outside the tabulated bands "
        f"[{BAND_TABLE[0].f_low_ghz}, {top.f_high_ghz}] GHz"
    )
