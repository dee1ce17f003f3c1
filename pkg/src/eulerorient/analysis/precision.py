"""Run-wide working precision for the analysis routines."""
from __future__ import annotations

import mpmath as mp

DEFAULT_DPS = 250


def set_precision(dps: int = DEFAULT_DPS) -> None:
    if dps < 50:
        raise ValueError("working precision must be at least 50 digits")
    mp.mp.dps = dps


def get_precision() -> int:
    return mp.mp.dps


def mpf(x) -> mp.mpf:
    """Exact conversion of ints and decimal strings; floats go through repr."""
    if isinstance(x, mp.mpf):
        return x
    if isinstance(x, int):
        return mp.mpf(x)
    if isinstance(x, float):
        return mp.mpf(repr(x))
    return mp.mpf(x)
