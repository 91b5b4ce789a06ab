"""Special functions used by the distribution code."""

from __future__ import annotations

import math

from . import _kernels


def erf(x: float) -> float:
    return math.erf(x)


def erfc(x: float) -> float:
    return math.erfc(x)


def log_gamma(x: float) -> float:
    """ln Γ(x) for x > 0."""
    if not x > 0 or not math.isfinite(x):
        raise ValueError(f"log_gamma requires a finite x > 0, got {x}")
    return math.lgamma(x)


def reg_incomplete_beta(a: float, b: float, x: float) -> float:
    """Regularised incomplete beta I_x(a, b).

    Continued fraction (modified Lentz), evaluated on whichever side of the
    mean ``(a + 1) / (a + b + 2)`` converges fastest.
    """
    if not (a > 0 and b > 0):
        raise ValueError(f"reg_incomplete_beta requires a, b > 0, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"reg_incomplete_beta requires x in [0, 1], got {x}")
    return float(_kernels.incbeta2(float(a), float(b), float(x), 1.0 - float(x)))


def norm_ppf(p: float) -> float:
    """Standard normal quantile (AS241); accurate to about 1e-16 relative."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return float(_kernels.ndtri(float(p)))
