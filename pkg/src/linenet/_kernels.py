"""Backend selection for the hot kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy/pure-Python fallback in ``_pykernels`` is used. Setting
``LINENET_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

_FORCE_PY = os.environ.get("LINENET_PURE_PYTHON", "").strip() not in ("", "0")

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if _ckernels is not None and not _FORCE_PY:
    _impl = _ckernels
    BACKEND = "cython"
else:
    _impl = _pykernels
    BACKEND = "python"

OK = _pykernels.OK
COLLINEAR = _pykernels.COLLINEAR

clip_convex = _impl.clip_convex
segment_intersections = _impl.segment_intersections
dijkstra = _impl.dijkstra


def available_backends() -> dict:
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out
