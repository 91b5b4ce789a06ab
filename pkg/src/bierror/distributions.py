"""Parametric continuous distributions: density, CDF, quantile and sampling."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels as _k
from . import _numpy_kernels as _nk
from .errors import DomainError
from .rng import RngState


class Kind(enum.Enum):
    NORMAL = _k.NORMAL
    STUDENT_T = _k.STUDENT_T
    FISHER_F = _k.FISHER_F
    CAUCHY = _k.CAUCHY
    LAPLACE = _k.LAPLACE
    LOGISTIC = _k.LOGISTIC

    @property
    def symmetric(self) -> bool:
        """Symmetric about the location and strictly decreasing away from it."""
        return self is not Kind.FISHER_F

    @property
    def location_family(self) -> bool:
        return self is not Kind.FISHER_F


@dataclass(frozen=True)
class DistributionSpec:
    """A fully parameterised distribution.

    ``location``/``scale`` apply to every kind except FISHER_F; ``df1`` is the
    Student-t degrees of freedom or the F numerator df; ``df2`` and
    ``noncentrality`` are used by FISHER_F only.
    """

    kind: Kind
    location: float = 0.0
    scale: float = 1.0
    df1: float = 1.0
    df2: float = 1.0
    noncentrality: float = 0.0

    def __post_init__(self):
        if not isinstance(self.kind, Kind):
            raise DomainError(f"unknown distribution kind {self.kind!r}")
        if not math.isfinite(self.location):
            raise DomainError(f"location must be finite, got {self.location}")
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise DomainError(f"scale must be a finite positive number, got {self.scale}")
        for name in ("df1", "df2"):
            v = getattr(self, name)
            if not (v >= 1 and math.isfinite(v)):
                raise DomainError(f"{name} must be >= 1, got {v}")
        if not (self.noncentrality >= 0 and math.isfinite(self.noncentrality)):
            raise DomainError(f"noncentrality must be >= 0, got {self.noncentrality}")
        if self.noncentrality and self.kind is not Kind.FISHER_F:
            raise DomainError("noncentrality is only supported for the F distribution")

    @property
    def symmetric(self) -> bool:
        return self.kind.symmetric

    @cached_property
    def packed(self) -> np.ndarray:
        return np.array(
            [self.kind.value, self.location, self.scale, self.df1, self.df2, self.noncentrality],
            dtype=np.float64,
        )

    def shape_params(self) -> tuple:
        """Everything except the location; equal tuples mean a pure location shift."""
        if self.kind is Kind.FISHER_F:
            return (self.kind, self.df1, self.df2, self.noncentrality)
        if self.kind is Kind.STUDENT_T:
            return (self.kind, self.scale, self.df1)
        return (self.kind, self.scale)

    def describe(self) -> str:
        if self.kind is Kind.FISHER_F:
            return f"f(d1={self.df1:g}, d2={self.df2:g}, ncp={self.noncentrality:g})"
        if self.kind is Kind.STUDENT_T:
            return f"t(df={self.df1:g}, mu={self.location:g}, sigma={self.scale:g})"
        return f"{self.kind.name.lower()}(mu={self.location:g}, sigma={self.scale:g})"

    def pdf(self, x):
        return pdf(self, x)

    def cdf(self, x):
        return cdf(self, x)

    def sf(self, x):
        return sf(self, x)

    def quantile(self, p):
        return quantile(self, p)

    def sample(self, rng: RngState, k: int) -> np.ndarray:
        return sample(self, rng, k)


def normal(mu: float = 0.0, sigma: float = 1.0) -> DistributionSpec:
    return DistributionSpec(Kind.NORMAL, location=mu, scale=sigma)


def student_t(df: float, mu: float = 0.0, sigma: float = 1.0) -> DistributionSpec:
    return DistributionSpec(Kind.STUDENT_T, location=mu, scale=sigma, df1=df)


def fisher_f(d1: float, d2: float, ncp: float = 0.0) -> DistributionSpec:
    return DistributionSpec(Kind.FISHER_F, df1=d1, df2=d2, noncentrality=ncp)


def cauchy(mu: float = 0.0, sigma: float = 1.0) -> DistributionSpec:
    return DistributionSpec(Kind.CAUCHY, location=mu, scale=sigma)


def laplace(mu: float = 0.0, b: float = 1.0) -> DistributionSpec:
    return DistributionSpec(Kind.LAPLACE, location=mu, scale=b)


def logistic(mu: float = 0.0, s: float = 1.0) -> DistributionSpec:
    return DistributionSpec(Kind.LOGISTIC, location=mu, scale=s)


def _apply(scalar_fn, array_fn, d: DistributionSpec, x):
    if np.ndim(x) == 0:
        return float(scalar_fn(d.packed, float(x)))
    arr = np.ascontiguousarray(x, dtype=np.float64)
    return array_fn(d.packed, arr.ravel()).reshape(arr.shape)


def pdf(d: DistributionSpec, x):
    """Density at ``x`` (scalar or array); zero outside the support."""
    return _apply(_k.pdf, _k.pdf_array, d, x)


def cdf(d: DistributionSpec, x):
    """P(X <= x). The noncentral F uses a Poisson-weighted incomplete-beta series."""
    return _apply(_k.cdf, _k.cdf_array, d, x)


def sf(d: DistributionSpec, x):
    """P(X > x), accurate in the upper tail (not computed as 1 - cdf)."""
    return _apply(_k.sf, _k.sf_array, d, x)


def quantile(d: DistributionSpec, p):
    """Inverse CDF for p in (0, 1) by bracketed Newton/bisection."""
    p_arr = np.asarray(p, dtype=np.float64)
    if not np.all((p_arr > 0.0) & (p_arr < 1.0)):
        raise DomainError(f"quantile requires 0 < p < 1, got {p}")
    return _apply(_k.quantile, _k.quantile_array, d, p)


def sample(d: DistributionSpec, rng: RngState, k: int) -> np.ndarray:
    """``k`` variates by inverse-CDF transform of ``rng.uniforms(k)``.

    The transform is ``location + scale * Q(u)`` for location families, so
    shifting the location shifts every variate by exactly that amount.
    """
    if k < 0:
        raise DomainError(f"sample size must be non-negative, got {k}")
    u = rng.uniforms(k)
    kind = d.kind
    if kind is Kind.NORMAL:
        z = _nk.ndtri(u)
    elif kind is Kind.CAUCHY:
        z = np.tan(np.pi * (u - 0.5))
    elif kind is Kind.LAPLACE:
        z = np.where(u < 0.5, np.log(2.0 * u), -np.log(2.0 * (1.0 - u)))
    elif kind is Kind.LOGISTIC:
        z = np.log(u) - np.log1p(-u)
    elif kind is Kind.STUDENT_T:
        z = _k.quantile_array(student_t(d.df1).packed, u)
    else:
        return _k.quantile_array(d.packed, u)
    return d.location + d.scale * z
