"""Pair-scan kernel backend selection.

The compiled Cython module is preferred when present; otherwise the
numpy implementation takes over.  Both expose the same seven functions
with identical semantics, value arithmetic and witness tie-breaking.

Set DEMIKIT_KERNELS=python to force the fallback, or =compiled to
require the extension (ImportError if it is missing).
"""

from __future__ import annotations

import os

import numpy as np

from . import _numpy_backend

_FUNCTIONS = (
    "pair_max_ne",
    "pair_max_spc",
    "pair_sup_spc_ratio",
    "fix_max_qne",
    "fix_max_dc",
    "fix_sup_dc_ratio",
    "fix_max_inner",
)

_choice = os.environ.get("DEMIKIT_KERNELS", "").strip().lower()

if _choice in ("python", "numpy"):
    _impl = _numpy_backend
    BACKEND = "python"
else:
    try:
        from . import _pairscan as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise
        _impl = _numpy_backend
        BACKEND = "python"


def _as_c2d(a) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(a, dtype=np.float64))


def _wrap(name):
    fn = getattr(_impl, name)

    def call(*arrays_and_scalars):
        args = [
            _as_c2d(a) if isinstance(a, np.ndarray) or hasattr(a, "__len__") else float(a)
            for a in arrays_and_scalars
        ]
        value, i, j = fn(*args)
        return float(value), int(i), int(j)

    call.__name__ = name
    call.__doc__ = fn.__doc__
    return call


pair_max_ne = _wrap("pair_max_ne")
pair_max_spc = _wrap("pair_max_spc")
pair_sup_spc_ratio = _wrap("pair_sup_spc_ratio")
fix_max_qne = _wrap("fix_max_qne")
fix_max_dc = _wrap("fix_max_dc")
fix_sup_dc_ratio = _wrap("fix_sup_dc_ratio")
fix_max_inner = _wrap("fix_max_inner")

__all__ = list(_FUNCTIONS) + ["BACKEND", "backends"]


def backends() -> dict:
    """Name -> module for every available backend (used by the benchmark
    and the cross-backend tests)."""
    out = {"python": _numpy_backend}
    try:
        from . import _pairscan  # type: ignore[attr-defined]
        out["compiled"] = _pairscan
    except ImportError:
        pass
    return out
