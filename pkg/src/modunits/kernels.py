"""Backend selection for the hot kernels.

The compiled extension ``modunits._ckernels`` is used when it imports and
``MODUNITS_PURE_PYTHON`` is unset; otherwise the pure-Python twins in
``modunits._kernels_py`` run. Both produce identical results.
"""
from __future__ import annotations

import os

from modunits import _kernels_py
from modunits._kernels_py import NotDivisible

# Packed keys must stay inside a signed 64-bit integer for the compiled path.
C_MAX_BITS = 62
C_MAX_SCALAR = 1 << 62

_ext = None
if not os.environ.get("MODUNITS_PURE_PYTHON"):
    try:
        from modunits import _ckernels as _ext
    except ImportError:  # extension not built
        _ext = None

BACKEND = "cython" if _ext is not None else "python"

__all__ = ["BACKEND", "NotDivisible", "mul", "divexact", "sample_scaled", "backends"]


def backends() -> dict:
    """Map of available backend name -> kernel module (for tests and benchmarks)."""
    out = {"python": _kernels_py}
    if _ext is not None:
        out["cython"] = _ext
    else:
        try:
            from modunits import _ckernels
        except ImportError:
            pass
        else:
            out["cython"] = _ckernels
    return out


def mul(p: dict, q: dict, key_bits: int) -> dict:
    if _ext is not None and key_bits <= C_MAX_BITS:
        return _ext.mul(p, q)
    return _kernels_py.mul(p, q)


def divexact(p: dict, d: dict, guard: int, key_bits: int) -> dict:
    if _ext is not None and key_bits <= C_MAX_BITS:
        return _ext.divexact(p, d, guard)
    return _kernels_py.divexact(p, d, guard)


def sample_scaled(bp_num, bp_den, slope, icept, n: int) -> list:
    if _ext is not None:
        bound = max(map(abs, [*bp_num, *bp_den, *slope, *icept, 1]))
        if bound * (n + 1) * 2 < C_MAX_SCALAR and max(bp_den) * (n + 1) < C_MAX_SCALAR:
            return _ext.sample_scaled(bp_num, bp_den, slope, icept, n)
    return _kernels_py.sample_scaled(bp_num, bp_den, slope, icept, n)
