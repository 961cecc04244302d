"""Counter-based pseudo-random stream shared by all sampling backends.

The generator is the splitmix64 output function used in counter mode: the
value at position ``i`` of the stream with seed ``s`` is

    mix64(s + (i + 1) * GOLDEN)   (all arithmetic mod 2**64)

where ``mix64`` is the standard splitmix64 finalizer (xor-shift/multiply
avalanche) and GOLDEN is the 64-bit golden-ratio increment.  Because each
value is a pure function of (seed, position), sampling can be chunked or
parallelized arbitrarily and merged associatively with bit-identical
results; early-exit consumers simply never evaluate their unused
positions.

Uniforms map the top 53 bits to the open interval (0, 1) via
``(bits + 0.5) * 2**-53``, which never returns an endpoint.  Gaussians use
the Box-Muller cosine branch on one uniform pair per deviate.  Independent
substreams are derived by finalizing the seed against a salt.

This module holds the scalar reference implementation (plain Python
integers); the numpy and compiled kernels reproduce it exactly on the
integer side.
"""

from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MULT1 = 0xBF58476D1CE4E5B9
_MULT2 = 0x94D049BB133111EB
_INV_2_53 = 2.0 ** -53

GENERATOR_ID = "splitmix64-counter/box-muller-v1"

# Substream salts; one per sampling kernel so a shared master seed never
# reuses counter positions across kernels.
DUEL_STREAM = 0xD0E1
ENGAGEMENT_STREAM = 0xEA57


def mix64(z: int) -> int:
    """splitmix64 finalizer: a 64-bit bijective avalanche mix."""
    z &= MASK64
    z ^= z >> 30
    z = (z * _MULT1) & MASK64
    z ^= z >> 27
    z = (z * _MULT2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, salt: int) -> int:
    """Seed of the independent substream of ``seed`` tagged by ``salt``."""
    return mix64((seed ^ mix64(salt)) & MASK64)


def counter_u64(seed: int, index: int) -> int:
    """The ``index``-th 64-bit value of the stream seeded by ``seed``."""
    return mix64((seed + (index + 1) * GOLDEN) & MASK64)


def counter_uniform(seed: int, index: int) -> float:
    """The ``index``-th uniform draw, strictly inside (0, 1)."""
    return ((counter_u64(seed, index) >> 11) + 0.5) * _INV_2_53


def counter_normal(seed: int, pair_index: int) -> float:
    """Standard normal deviate from uniform pair ``pair_index``.

    Box-Muller cosine branch: sqrt(-2 ln u1) * cos(2 pi u2) with u1 at
    counter 2*pair_index and u2 at the following counter.
    """
    u1 = counter_uniform(seed, 2 * pair_index)
    u2 = counter_uniform(seed, 2 * pair_index + 1)
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
