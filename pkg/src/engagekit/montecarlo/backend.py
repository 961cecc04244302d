"""Sampling-backend selection.

The compiled Cython kernels are used when their extension imported
successfully; otherwise the numpy fallback takes over with identical
semantics.  ENGAGEKIT_BACKEND=compiled|python forces the choice (forcing
"compiled" raises if the extension is unavailable).  Both backends expose
the same four callables; see kernels_py for the contracts.
"""

from __future__ import annotations

import os

import numpy as np

from . import kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

_forced = os.environ.get("ENGAGEKIT_BACKEND")
if _forced not in (None, "", "compiled", "python"):
    raise RuntimeError(f"unknown ENGAGEKIT_BACKEND value {_forced!r}")
if _forced == "compiled" and _compiled is None:
    raise RuntimeError("ENGAGEKIT_BACKEND=compiled but the extension is not built")

_use_compiled = _compiled is not None and _forced != "python"

BACKEND_NAME = "compiled" if _use_compiled else "python"


def _compiled_stream_uniforms(seed: int, start: int, count: int) -> np.ndarray:
    out = np.empty(count, dtype=np.float64)
    _compiled.fill_uniforms(seed, start, out)
    return out


def _compiled_stream_normals(seed: int, start_pair: int, count: int) -> np.ndarray:
    out = np.empty(count, dtype=np.float64)
    _compiled.fill_normals(seed, start_pair, out)
    return out


if _use_compiled:
    stream_uniforms = _compiled_stream_uniforms
    stream_normals = _compiled_stream_normals
    duel_counts = _compiled.duel_counts
    engagement_counts = _compiled.engagement_counts
else:
    stream_uniforms = kernels_py.stream_uniforms
    stream_normals = kernels_py.stream_normals
    duel_counts = kernels_py.duel_counts
    engagement_counts = kernels_py.engagement_counts
