"""Desk-scale engagement analytics.

Library surface: discrete-exchange probability models (exchange), planar
intercept geometry (geometry), Gaussian launch-range and duel models
(advantage), exact-enumeration and seeded Monte Carlo verification
oracles (montecarlo), a waypoint pure-pursuit simulator (pursuit), radar
timing and budget math (radar), a sensor-fusion detection pipeline
(detection), and a batch CLI (cli) over JSON scenario files.
"""

__version__ = "0.1.0"

from .advantage import (
    DuelWinResult,
    EngagementScenario,
    GaussianSpec,
    ModelWarning,
    RangeAdvantageResult,
    SeekerConfigError,
    SeekerMode,
    SideStochastics,
    ar_first_kill,
    duel_outcomes,
    gaussian_exceedance,
    launch_range_distribution,
    normal_cdf,
    sar_first_kill,
)
from .detection import (
    DetectionClass,
    DetectionVerdict,
    SensorFrame,
    classify,
    parse_trace,
    smoke_alarm,
    sonar_distance,
    track_object,
)
from .exchange import (
    DuelMode,
    DuelOutcome,
    DuelParams,
    FirstShooter,
    NvnOutcome,
    NvnParams,
    SalvoParams,
    UnsupportedEngagement,
    kill_salvo,
    nvn_survivors,
    sequential_duel,
    simultaneous_duel,
    survive_salvo,
)
from .geometry import (
    InterceptSolution,
    Kinematics,
    MissileLine,
    NoInterceptSolution,
    TofConvention,
    closure_rate,
    lead_angle,
    missile_line,
    post_intercept_separation,
    solve_intercept,
)
from .montecarlo import (
    DiscreteDuelMc,
    EngagementMc,
    EnumerationLimitError,
    McConfig,
    McEstimate,
    enumerate_duel,
    mc_discrete_duel,
    mc_range_advantage,
)
from .pursuit import (
    PursuitScenario,
    PursuitTrace,
    PursuitVerdict,
    pursuit_csv,
    run_pursuit,
)
from .radar import (
    BAND_TABLE,
    BandEntry,
    PulseParams,
    SnrParams,
    classify_band,
    doppler_shift,
    echo_delay,
    fold_doppler,
    max_unambiguous_doppler,
    range_bin,
    snr,
    unambiguous_range,
    wavelength,
)
