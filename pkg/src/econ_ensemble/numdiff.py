"""Central finite differences with one Richardson extrapolation level."""
from __future__ import annotations

from typing import Callable


def central_difference(f: Callable[[float], float], x: float,
                       h: float | None = None) -> float:
    """d f / d x via central differences, Richardson-extrapolated once.

    The default step h = max(1e-6, 1e-6*|x|) balances truncation against
    rounding for double precision.
    """
    if h is None:
        h = max(1e-6, 1e-6 * abs(x))
    d1 = (f(x + h) - f(x - h)) / (2.0 * h)
    d2 = (f(x + h / 2.0) - f(x - h / 2.0)) / h
    return (4.0 * d2 - d1) / 3.0
