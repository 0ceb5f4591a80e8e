"""Shared helpers for the test suite."""

import numpy as np


def max_abs(x) -> float:
    arr = np.atleast_1d(np.asarray(x))
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))


def rel_err(a, b) -> float:
    """Scale-guarded relative difference: |a-b|_inf / max(1, |a|_inf, |b|_inf)."""
    a = np.atleast_1d(np.asarray(a, dtype=np.complex128))
    b = np.atleast_1d(np.asarray(b, dtype=np.complex128))
    return max_abs(a - b) / max(1.0, max_abs(a), max_abs(b))
