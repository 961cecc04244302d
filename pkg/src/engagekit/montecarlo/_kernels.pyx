# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sampling kernels: the hot per-sample loops of the Monte Carlo
estimators.

Integer stream and classification logic match kernels_py.py exactly;
Gaussian deviates go through libc's log/cos/sqrt and may differ from the
numpy backend in the last ulp.
"""

from libc.math cimport cos, log, sqrt, M_PI

ctypedef unsigned long long u64

cdef u64 GOLDEN = 0x9E3779B97F4A7C15ULL
cdef u64 MULT1 = 0xBF58476D1CE4E5B9ULL
cdef u64 MULT2 = 0x94D049BB133111EBULL
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline u64 _mix64(u64 z) noexcept nogil:
    z ^= z >> 30
    z = z * MULT1
    z ^= z >> 27
    z = z * MULT2
    return z ^ (z >> 31)


cdef inline double _uniform_at(u64 seed, u64 index) noexcept nogil:
    cdef u64 bits = _mix64(seed + (index + 1) * GOLDEN)
    return (<double>(bits >> 11) + 0.5) * INV_2_53


cdef inline double _normal_at(u64 seed, u64 pair_index) noexcept nogil:
    cdef double u1 = _uniform_at(seed, 2 * pair_index)
    cdef double u2 = _uniform_at(seed, 2 * pair_index + 1)
    return sqrt(-2.0 * log(u1)) * cos(2.0 * M_PI * u2)


def fill_uniforms(u64 seed, u64 start, double[::1] out):
    cdef Py_ssize_t i
    for i in range(out.shape[0]):
        out[i] = _uniform_at(seed, start + <u64>i)


def fill_normals(u64 seed, u64 start_pair, double[::1] out):
    cdef Py_ssize_t i
    for i in range(out.shape[0]):
        out[i] = _normal_at(seed, start_pair + <u64>i)


def duel_counts(double p_blue, double p_red, int rounds, bint sequential,
                bint blue_first, u64 seed, u64 start, long long count):
    """Terminal-state counts (red_only, blue_only, mutual, both_survive)
    over ``count`` simulated duels starting at sample ``start``.

    Counter layout per sample: blue's round-v shot at offset 2v, red's at
    2v+1.  Undecided rounds short-circuit, which is safe because counters
    are positional, not sequential.
    """
    cdef long long red_only = 0, blue_only = 0, mutual = 0, survive = 0
    cdef long long j
    cdef int v
    cdef u64 base
    cdef bint bh, rh, decided
    for j in range(count):
        base = (start + <u64>j) * <u64>(2 * rounds)
        decided = False
        for v in range(rounds):
            bh = _uniform_at(seed, base + <u64>(2 * v)) < p_blue
            rh = _uniform_at(seed, base + <u64>(2 * v) + 1) < p_red
            if sequential:
                if blue_first:
                    if bh:
                        red_only += 1
                        decided = True
                    elif rh:
                        blue_only += 1
                        decided = True
                else:
                    if rh:
                        blue_only += 1
                        decided = True
                    elif bh:
                        red_only += 1
                        decided = True
            else:
                if bh and rh:
                    mutual += 1
                    decided = True
                elif bh:
                    red_only += 1
                    decided = True
                elif rh:
                    blue_only += 1
                    decided = True
            if decided:
                break
        if not decided:
            survive += 1
    return red_only, blue_only, mutual, survive


def engagement_counts(double v_closure, double g_blue, double g_red,
                      bint blue_active, double[::1] means, double[::1] sds,
                      u64 seed, u64 start, long long count):
    """Joint-draw classification counts
    (first_kill_blue, blue_win_only, red_win_only, both_win, neither).

    Sample j consumes normal pairs [j*6, j*6+6) in slot order
    (detection_b, delay_b, acquisition_b, detection_r, delay_r,
    acquisition_r); unused slots are drawn anyway so the layout never
    depends on configuration.
    """
    cdef long long single = 0, blue_w = 0, red_w = 0, both = 0, neither = 0
    cdef long long j
    cdef u64 pair0
    cdef double d_b, t_b, a_b, d_r, t_r, a_r
    cdef double launch_b, launch_r
    cdef bint s_ok, blue_win, red_win
    for j in range(count):
        pair0 = (start + <u64>j) * 6
        d_b = means[0] + sds[0] * _normal_at(seed, pair0)
        t_b = means[1] + sds[1] * _normal_at(seed, pair0 + 1)
        a_b = means[2] + sds[2] * _normal_at(seed, pair0 + 2)
        d_r = means[3] + sds[3] * _normal_at(seed, pair0 + 3)
        t_r = means[4] + sds[4] * _normal_at(seed, pair0 + 4)
        a_r = means[5] + sds[5] * _normal_at(seed, pair0 + 5)
        launch_b = d_b - v_closure * t_b
        launch_r = d_r - v_closure * t_r

        if blue_active:
            s_ok = g_blue * (launch_b + a_b) - launch_r > 0.0
        else:
            s_ok = g_blue * launch_b - launch_r > 0.0
        blue_win = g_blue * launch_b - g_red * (launch_r + a_r) > 0.0
        red_win = g_blue * (launch_b + a_b) - g_red * launch_r < 0.0

        if s_ok:
            single += 1
        if blue_win and red_win:
            both += 1
        elif blue_win:
            blue_w += 1
        elif red_win:
            red_w += 1
        else:
            neither += 1
    return single, blue_w, red_w, both, neither
