"""Certified truncation of the one-dimensional weight series.

Every infinite sum in this package reduces to series of the form
sum_{h>=1} omega**(a*(scale*h)**b) * factor(h) with |factor| <= 1.
Because (scale*h)**b >= (scale*H)**b * (1 + (h-H)/H) for h >= H >= 1 and
b >= 1, the tail after H is dominated by a geometric series, which gives
a computable remainder bound; callers receive the partial sum and that
bound separately so nothing is silently absorbed.
"""

from __future__ import annotations

import math
from typing import Callable

__all__ = ["truncated_weight_sum"]

_MAX_TERMS = 10**7


def truncated_weight_sum(
    omega: float,
    a: float,
    b: float,
    scale: float = 1.0,
    tol: float = 1e-16,
    factor: Callable[[int], float] | None = None,
) -> tuple[float, float]:
    """Return (partial, tail_bound) for sum_{h>=1} omega**(a*(scale*h)**b)*factor(h).

    ``factor`` must satisfy |factor(h)| <= 1 (it defaults to 1); the true
    sum then lies within tail_bound of the partial sum, tail_bound < tol.
    """
    log_w = math.log(omega)
    partial = 0.0
    h = 0
    while True:
        h += 1
        if h > _MAX_TERMS:
            raise RuntimeError("weight series did not reach the requested tolerance")
        exponent = a * (scale * h) ** b
        term = math.exp(exponent * log_w)
        partial += term * (factor(h) if factor is not None else 1.0)
        # Tail bound anchored at H = h: terms at h+k are at most
        # omega**(a*(scale*h)**b) * q**k with q = omega**(a*(scale*h)**b / h).
        q = math.exp(exponent * log_w / h)
        tail = term * q / (1.0 - q) if q < 1.0 else math.inf
        if tail < tol:
            return partial, tail
