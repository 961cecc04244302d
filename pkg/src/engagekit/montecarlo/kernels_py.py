"""Vectorized numpy fallback for the sampling kernels.

Reproduces the counter stream of rng.py bit-for-bit on the integer and
uniform side; Gaussian deviates may differ from the compiled backend in
the last ulp because numpy's transcendental loops are not guaranteed to
round identically to libm.  Classification logic and expression shapes
mirror _kernels.pyx exactly.
"""

from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MULT1 = np.uint64(0xBF58476D1CE4E5B9)
_MULT2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_INV_2_53 = 2.0 ** -53


def _mix64(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> _S30)
    z = z * _MULT1
    z = z ^ (z >> _S27)
    z = z * _MULT2
    return z ^ (z >> _S31)


def _uniform_at(seed: np.uint64, index: np.ndarray) -> np.ndarray:
    bits = _mix64(seed + (index + _ONE) * _GOLDEN)
    return ((bits >> _S11).astype(np.float64) + 0.5) * _INV_2_53


def _normal_at(seed: np.uint64, pair_index: np.ndarray) -> np.ndarray:
    two = pair_index * np.uint64(2)
    u1 = _uniform_at(seed, two)
    u2 = _uniform_at(seed, two + _ONE)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


def stream_uniforms(seed: int, start: int, count: int) -> np.ndarray:
    idx = np.arange(start, start + count, dtype=np.uint64)
    return _uniform_at(np.uint64(seed), idx)


def stream_normals(seed: int, start_pair: int, count: int) -> np.ndarray:
    idx = np.arange(start_pair, start_pair + count, dtype=np.uint64)
    return _normal_at(np.uint64(seed), idx)


def duel_counts(
    p_blue: float,
    p_red: float,
    rounds: int,
    sequential: bool,
    blue_first: bool,
    seed: int,
    start: int,
    count: int,
) -> tuple[int, int, int, int]:
    """Classify ``count`` simulated duels starting at sample ``start``.

    Sample j consumes uniform counters [j*2*rounds, (j+1)*2*rounds): blue's
    round-v shot sits at offset 2v, red's at 2v+1, independent of firing
    order.  Returns mutually exclusive terminal counts
    (red_only, blue_only, mutual, both_survive).
    """
    s = np.uint64(seed)
    idx = np.arange(start, start + count, dtype=np.uint64)
    base = idx * np.uint64(2 * rounds)
    blue_hits = np.empty((count, rounds), dtype=bool)
    red_hits = np.empty((count, rounds), dtype=bool)
    for v in range(rounds):
        off = np.uint64(2 * v)
        blue_hits[:, v] = _uniform_at(s, base + off) < p_blue
        red_hits[:, v] = _uniform_at(s, base + off + _ONE) < p_red

    decided = blue_hits | red_hits
    any_decided = decided.any(axis=1)
    first = decided.argmax(axis=1)
    rows = np.arange(count)
    bh = blue_hits[rows, first] & any_decided
    rh = red_hits[rows, first] & any_decided

    if sequential:
        if blue_first:
            red_only = bh
            blue_only = ~bh & rh
        else:
            blue_only = rh
            red_only = ~rh & bh
        mutual = np.zeros(count, dtype=bool)
    else:
        mutual = bh & rh
        red_only = bh & ~rh
        blue_only = rh & ~bh
    survive = ~any_decided
    return (
        int(red_only.sum()),
        int(blue_only.sum()),
        int(mutual.sum()),
        int(survive.sum()),
    )


def engagement_counts(
    v_closure: float,
    g_blue: float,
    g_red: float,
    blue_active: bool,
    means: np.ndarray,
    sds: np.ndarray,
    seed: int,
    start: int,
    count: int,
) -> tuple[int, int, int, int, int]:
    """Classify ``count`` joint engagement draws starting at sample ``start``.

    Sample j consumes normal pairs [j*6, j*6+6) in slot order
    (detection_b, delay_b, acquisition_b, detection_r, delay_r,
    acquisition_r); unused slots of semi-active sides are still drawn so
    the counter layout never depends on configuration.  Returns
    (first_kill_blue, blue_win_only, red_win_only, both_win, neither).
    """
    s = np.uint64(seed)
    pair0 = np.arange(start, start + count, dtype=np.uint64) * np.uint64(6)
    draws = [
        means[v] + sds[v] * _normal_at(s, pair0 + np.uint64(v)) for v in range(6)
    ]
    d_b, t_b, a_b, d_r, t_r, a_r = draws
    launch_b = d_b - v_closure * t_b
    launch_r = d_r - v_closure * t_r

    if blue_active:
        single = g_blue * (launch_b + a_b) - launch_r > 0.0
    else:
        single = g_blue * launch_b - launch_r > 0.0
    blue_win = g_blue * launch_b - g_red * (launch_r + a_r) > 0.0
    red_win = g_blue * (launch_b + a_b) - g_red * launch_r < 0.0

    both = blue_win & red_win
    return (
        int(single.sum()),
        int((blue_win & ~red_win).sum()),
        int((red_win & ~blue_win).sum()),
        int(both.sum()),
        int((~blue_win & ~red_win).sum()),
    )
