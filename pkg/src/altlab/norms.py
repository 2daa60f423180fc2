"""Schatten (quasi)norms, trace powers and the Ky Fan constant."""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, RangeError
from .linalg import PsdMatrix, singular_values

INF = math.inf


def schatten_index(p) -> float:
    """Validate a Schatten index; ``math.inf`` (or "inf") is the operator norm."""
    if isinstance(p, str):
        key = p.strip().lower()
        if key in ("inf", "infinity", "oo", "∞"):
            return INF
        p = float(key)
    p = float(p)
    if math.isnan(p) or p <= 0.0:
        raise DomainError(f"Schatten index must be positive, got {p}")
    return p


def power_sum_norm(values, p) -> float:
    """``(sum v_i^p)^(1/p)`` for non-negative ``values``; the max for p = inf.

    Scaled by the largest value first so that large ``p`` cannot overflow.
    """
    v = np.asarray(values, dtype=float)
    top = float(v.max()) if v.size else 0.0
    if top <= 0.0:
        return 0.0
    if p == INF:
        return top
    out = top * float(np.sum((v / top) ** p)) ** (1.0 / p)
    if not math.isfinite(out):
        raise RangeError(f"Schatten {p}-norm overflows")
    return out


def schatten(x, p) -> float:
    """Schatten p-norm from the singular values (a quasinorm for p < 1)."""
    return power_sum_norm(singular_values(x), schatten_index(p))


def operator_norm(x) -> float:
    """Largest singular value; for PSD input simply lambda_max."""
    if isinstance(x, PsdMatrix):
        return float(x.eigenvalues[0])
    return schatten(x, INF)


def trace_power(p, s) -> float:
    """``Tr P^s`` with the conventions of :func:`~altlab.linalg.psd_power`."""
    if not isinstance(p, PsdMatrix):
        p = PsdMatrix(p)
    s = float(s)
    w = p.eigenvalues
    if s == 0.0:
        return float(p.n)
    if s < 0.0 and not p.is_definite:
        raise DomainError(f"negative trace power {s} of a singular matrix")
    total = float(np.sum(np.where(w > 0.0, w, 0.0 if s > 0 else 1.0) ** s))
    if not math.isfinite(total):
        raise RangeError(f"trace power {s} overflows")
    return total


def kyfan_constant(a, b, r) -> float:
    """Ky Fan constant K(a, b, r) for spectrum bounds ``0 < b <= a`` and r >= 1.

    Depends on ``a / b`` only. Both removable singularities (``a = b`` and
    ``r = 1``) take the limiting value 1.
    """
    a, b, r = float(a), float(b), float(r)
    if not b > 0.0:
        raise DomainError(f"need b > 0, got b = {b}")
    if a < b:
        raise DomainError(f"need a >= b, got a = {a}, b = {b}")
    if r < 1.0:
        raise DomainError(f"need r >= 1, got r = {r}")
    x = a / b
    if x - 1.0 <= 1e-12 or r - 1.0 <= 1e-12:
        return 1.0
    xr = x ** r
    first = (xr - x) / ((r - 1.0) * (x - 1.0))
    second = ((r - 1.0) / r) * (xr - 1.0) / (xr - x)
    k = first * second ** r
    if not math.isfinite(k):
        raise RangeError(f"K({a}, {b}, {r}) overflows")
    return k
