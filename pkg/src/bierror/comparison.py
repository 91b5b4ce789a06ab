"""Cost of the conventional α-level critical value relative to the Youden threshold.

ξ = ζ(c_α) − ζ(J) is the excess Bi Error; φ = ω1/ω2 compares the error odds
ω = ζ/(1 − ζ) at the two thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import HypothesisPair, Tail, alpha_threshold, youden, youden_numeric
from .distributions import Kind, fisher_f, normal
from .errors import DomainError, NumericalError
from .special import erf, erfc, norm_ppf

ODDS_EPS = 1e-12
CROSS_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class ComparisonPoint:
    x_value: float
    zeta_alpha: float
    zeta_star: float
    xi: float
    omega1: float
    omega2: float
    phi: float

    @property
    def phi_defined(self) -> bool:
        return math.isfinite(self.phi)


def odds(zeta: float) -> float:
    """ζ/(1 − ζ); infinite once ζ reaches 1 − 1e-12."""
    if zeta >= 1.0 - ODDS_EPS:
        return math.inf
    return zeta / (1.0 - zeta)


def make_point(x_value: float, zeta_alpha: float, zeta_star: float) -> ComparisonPoint:
    w1, w2 = odds(zeta_alpha), odds(zeta_star)
    phi = w1 / w2 if math.isfinite(w1) and math.isfinite(w2) and w2 > 0 else math.nan
    return ComparisonPoint(x_value, zeta_alpha, zeta_star, zeta_alpha - zeta_star, w1, w2, phi)


def _norm_cdf(x: float) -> float:
    return 0.5 * erfc(-x / math.sqrt(2.0))


def normal_zetas(d: float, alpha: float) -> tuple[float, float]:
    """(ζ_α, ζ*) for an equal-variance normal pair with standardised effect |d|."""
    d = abs(d)
    return alpha + _norm_cdf(norm_ppf(1.0 - alpha) - d), 2.0 * _norm_cdf(-0.5 * d)


def _is_equal_normal(pair: HypothesisPair) -> bool:
    return (
        pair.null.kind is Kind.NORMAL
        and pair.alt.kind is Kind.NORMAL
        and pair.null.scale == pair.alt.scale
    )


def xi(pair: HypothesisPair, alpha: float = 0.05, x_value: float | None = None) -> ComparisonPoint:
    """ξ, odds and φ for one pair.

    For equal-variance normal pairs the generic CDF route is checked against
    the closed-form normal expressions and a mismatch raises NumericalError.
    """
    za = alpha_threshold(pair, alpha).zeta
    zs = youden(pair).zeta
    if _is_equal_normal(pair):
        ca, cs = normal_zetas(pair.delta / pair.null.scale, alpha)
        if abs(ca - za) > CROSS_CHECK_TOL or abs(cs - zs) > CROSS_CHECK_TOL:
            raise NumericalError(f"normal cross-check failed: ({za}, {zs}) vs ({ca}, {cs})")
    if x_value is None:
        x_value = pair.delta if pair.null.kind.location_family else pair.alt.noncentrality
    return make_point(float(x_value), za, zs)


def cohens_d(mu0: float, mua: float, sigma: float) -> float:
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    return (mua - mu0) / sigma


@dataclass(frozen=True)
class GridRange:
    start: float
    stop: float
    num: int = 120

    def __post_init__(self):
        if self.num < 1:
            raise DomainError("a grid needs at least one point")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)) or self.stop < self.start:
            raise DomainError(f"invalid range [{self.start}, {self.stop}]")
        if self.num == 1 and self.stop != self.start:
            raise DomainError("a single-point grid must have start == stop")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.num)


@dataclass(frozen=True)
class SweepConfig:
    """Fixed parameters plus the swept range (δ, σ² or μA depending on the sweep)."""

    grid: GridRange
    alpha: float = 0.05
    mu0: float = 0.0
    sigma2: float = 2.0
    delta: float = 3.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.sigma2 > 0:
            raise DomainError(f"sigma2 must be positive, got {self.sigma2}")

    @classmethod
    def fig_delta(cls, num: int = 120) -> "SweepConfig":
        """ξ against δ at σ² = 2, δ ∈ [0.1, 6]."""
        return cls(GridRange(0.1, 6.0, num), sigma2=2.0)

    @classmethod
    def fig_sigma2(cls, num: int = 120) -> "SweepConfig":
        """ξ against σ² at δ = 3, σ² ∈ [0.5, 10]."""
        return cls(GridRange(0.5, 10.0, num), delta=3.0)

    @classmethod
    def fig_phi(cls, num: int = 120) -> "SweepConfig":
        """φ against Cohen's d at σ² = 5, μ0 = 0, μA ∈ [0, 2]."""
        return cls(GridRange(0.0, 2.0, num), sigma2=5.0, mu0=0.0)


def _normal_pair(mu0: float, mua: float, sigma: float) -> HypothesisPair:
    return HypothesisPair(normal(mu0, sigma), normal(mua, sigma), Tail.UPPER)


def sweep_delta(cfg: SweepConfig) -> list[ComparisonPoint]:
    deltas = cfg.grid.values()
    if deltas[0] <= 0:
        raise DomainError("the δ range must start above 0")
    sigma = math.sqrt(cfg.sigma2)
    return [xi(_normal_pair(cfg.mu0, cfg.mu0 + d, sigma), cfg.alpha, x_value=float(d)) for d in deltas]


def sweep_sigma2(cfg: SweepConfig) -> list[ComparisonPoint]:
    s2 = cfg.grid.values()
    if s2[0] <= 0:
        raise DomainError("the σ² range must start above 0")
    if not cfg.delta > 0:
        raise DomainError("δ must be positive")
    return [
        xi(_normal_pair(cfg.mu0, cfg.mu0 + cfg.delta, math.sqrt(v)), cfg.alpha, x_value=float(v))
        for v in s2
    ]


def sweep_phi(cfg: SweepConfig) -> list[ComparisonPoint]:
    """x_value is Cohen's d; φ is NaN (undefined) where μA = μ0."""
    sigma = math.sqrt(cfg.sigma2)
    mus = cfg.grid.values()
    if mus[0] < cfg.mu0:
        raise DomainError("μA must not lie below μ0 for an upper-tail sweep")
    return [
        xi(_normal_pair(cfg.mu0, float(m), sigma), cfg.alpha, x_value=cohens_d(cfg.mu0, float(m), sigma))
        for m in mus
    ]


@dataclass(frozen=True)
class FCaseStudy:
    d1: float
    d2: float
    ncp: float
    alpha: float
    threshold_alpha: float
    zeta_alpha: float
    beta_alpha: float
    threshold_star: float
    zeta_star: float
    alpha_star: float
    beta_star: float
    degenerate: bool


def f_case_study(d1: float, d2: float, ncp: float, alpha: float = 0.05) -> FCaseStudy:
    """Both thresholds for H0: F(d1, d2, 0) against HA: F(d1, d2, ncp)."""
    pair = HypothesisPair(fisher_f(d1, d2, 0.0), fisher_f(d1, d2, ncp), Tail.UPPER)
    conv = alpha_threshold(pair, alpha)
    star = youden_numeric(pair)
    return FCaseStudy(
        d1, d2, ncp, alpha,
        conv.threshold, conv.zeta, conv.beta,
        star.threshold, star.zeta, star.alpha, star.beta,
        degenerate=(ncp == 0.0),
    )


@dataclass(frozen=True)
class XiDecomposition:
    """ξ = α − ½ + ½erf((z − d)/√2) + ½erf(d/(2√2)) − ½erf(−d/(2√2)),

    with z the (1 − α) standard normal quantile and d the effect size in the
    test direction. The first erf term is β at the α-level cut-off (shifted
    by ½); the last two come from 1 − ζ* = erf(d/(2√2)).
    """

    alpha: float
    constant: float
    beta_term: float
    star_plus: float
    star_minus: float
    direct_total: float

    @property
    def erf_total(self) -> float:
        return self.alpha + self.constant + self.beta_term + self.star_plus + self.star_minus

    @property
    def discrepancy(self) -> float:
        return abs(self.erf_total - self.direct_total)


def xi_erf_decomposition(
    mu0: float, mua: float, sigma: float, alpha: float = 0.05, tail: Tail = Tail.UPPER
) -> XiDecomposition:
    d = cohens_d(mu0, mua, sigma)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    pair = HypothesisPair(normal(mu0, sigma), normal(mua, sigma), tail)
    e = d if tail is Tail.UPPER else -d
    z = norm_ppf(1.0 - alpha)
    r2 = math.sqrt(2.0)
    direct = alpha_threshold(pair, alpha).zeta - youden(pair).zeta
    return XiDecomposition(
        alpha=alpha,
        constant=-0.5,
        beta_term=0.5 * erf((z - e) / r2),
        star_plus=0.5 * erf(e / (2.0 * r2)),
        star_minus=-0.5 * erf(-e / (2.0 * r2)),
        direct_total=direct,
    )
