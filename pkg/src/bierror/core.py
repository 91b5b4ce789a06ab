"""Bi Error ζ(c) = α(c) + β(c) and the Youden threshold that minimises it."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as _k
from .distributions import DistributionSpec, Kind, pdf, quantile
from .errors import DomainError, NumericalError, TheoremInapplicable

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
DEFAULT_TOL = 1e-8
BRACKET_MASS = 1e-6


class Tail(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"


class Method(enum.Enum):
    CLOSED_FORM = "closed-form"
    NUMERIC = "numeric"
    ALPHA_QUANTILE = "alpha-quantile"


@dataclass(frozen=True)
class HypothesisPair:
    """Sampling distributions of a statistic under H0 and HA, plus the rejection side."""

    null: DistributionSpec
    alt: DistributionSpec
    tail: Tail = Tail.UPPER

    def __post_init__(self):
        if not isinstance(self.tail, Tail):
            object.__setattr__(self, "tail", Tail(self.tail))
        n, a = self.null, self.alt
        if n.kind.location_family != a.kind.location_family:
            raise DomainError("null and alternative must both be location families or both F")
        if n.kind is Kind.FISHER_F:
            lo, hi = n.noncentrality, a.noncentrality
        else:
            lo, hi = n.location, a.location
        if self.tail is Tail.UPPER and hi < lo:
            raise DomainError("an upper-tail test needs the alternative at or above the null")
        if self.tail is Tail.LOWER and hi > lo:
            raise DomainError("a lower-tail test needs the alternative at or below the null")
        if self.tail is Tail.LOWER and n.kind is Kind.FISHER_F:
            raise DomainError("lower-tail tests are only supported for location families")

    @property
    def upper(self) -> bool:
        return self.tail is Tail.UPPER

    @property
    def delta(self) -> float:
        """μA − μ0 for location families."""
        return self.alt.location - self.null.location

    def bracket(self) -> tuple[float, float]:
        """Search interval spanning the bulk of both distributions."""
        if self.upper:
            return (quantile(self.null, BRACKET_MASS), quantile(self.alt, 1.0 - BRACKET_MASS))
        return (quantile(self.alt, BRACKET_MASS), quantile(self.null, 1.0 - BRACKET_MASS))

    def beyond(self, x: float, c: float) -> bool:
        """Whether ``x`` is strictly more extreme than ``c`` in the test direction."""
        return x > c if self.upper else x < c


@dataclass(frozen=True)
class ErrorProfile:
    alpha: float
    beta: float

    @property
    def zeta(self) -> float:
        return self.alpha + self.beta


@dataclass(frozen=True)
class ThresholdResult:
    threshold: float
    profile: ErrorProfile
    method: Method
    iterations: int = 0
    degenerate: bool = False

    @property
    def alpha(self) -> float:
        return self.profile.alpha

    @property
    def beta(self) -> float:
        return self.profile.beta

    @property
    def zeta(self) -> float:
        return self.profile.zeta


@dataclass(frozen=True)
class Theorem1Report:
    symmetric: bool
    tail_decreasing: bool
    equal_scale: bool

    @property
    def applicable(self) -> bool:
        return self.symmetric and self.tail_decreasing and self.equal_scale


def bi_error(pair: HypothesisPair, c: float) -> ErrorProfile:
    """Type I and Type II error of rejecting when the statistic lies beyond ``c``."""
    if math.isnan(c):
        raise DomainError("threshold must not be NaN")
    a, b = _k.error_rates(pair.null.packed, pair.alt.packed, pair.upper, float(c))
    return ErrorProfile(float(a), float(b))


def zeta_curve(pair: HypothesisPair, cs) -> np.ndarray:
    cs = np.ascontiguousarray(cs, dtype=np.float64)
    a, b = _k.error_rates_array(pair.null.packed, pair.alt.packed, pair.upper, cs)
    return a + b


def _pdf_tail_decreasing(d: DistributionSpec, points: int = 64) -> bool:
    if d.kind is Kind.FISHER_F:
        grid = np.linspace(quantile(d, 1e-4), quantile(d, 1 - 1e-4), 2049)
        dens = pdf(d, grid)
        centre = float(grid[int(np.argmax(dens))])
        span = float(grid[-1] - grid[0])
        right = pdf(d, centre + np.linspace(0.0, span, points)[1:])
        left_pts = centre - np.linspace(0.0, centre, points)[1:-1]
        left = pdf(d, left_pts)
        return bool(np.all(np.diff(right) < 0) and (left.size < 2 or np.all(np.diff(left) < 0)))
    offsets = d.scale * np.linspace(0.0, 8.0, points)
    right = pdf(d, d.location + offsets)
    left = pdf(d, d.location - offsets)
    return bool(np.all(np.diff(right) < 0) and np.all(np.diff(left) < 0))


def check_theorem1(pair: HypothesisPair) -> Theorem1Report:
    """Check the preconditions of the midpoint closed form.

    Symmetry comes from the distribution kinds; the tail-decrease condition is
    spot-checked on a grid; equal scale means the alternative is a pure
    location shift of the null.
    """
    symmetric = pair.null.symmetric and pair.alt.symmetric
    tail_decreasing = _pdf_tail_decreasing(pair.null) and _pdf_tail_decreasing(pair.alt)
    equal_scale = symmetric and pair.null.shape_params() == pair.alt.shape_params()
    return Theorem1Report(symmetric, tail_decreasing, equal_scale)


def youden_closed_form(pair: HypothesisPair) -> ThresholdResult:
    """J = (μ0 + μA) / 2 for symmetric, tail-decreasing, equal-scale location pairs.

    With μ0 = μA the pair is degenerate: J = μ0, ζ = 1 and ``degenerate`` is set.
    """
    report = check_theorem1(pair)
    if not report.applicable:
        raise TheoremInapplicable(
            f"closed form needs symmetric, tail-decreasing, equal-scale distributions "
            f"(got {report}); use youden_numeric instead"
        )
    mu0, mua = pair.null.location, pair.alt.location
    j = 0.5 * (mu0 + mua)
    return ThresholdResult(j, bi_error(pair, j), Method.CLOSED_FORM, 0, degenerate=(mu0 == mua))


def golden_section(f, lo: float, hi: float, tol: float, max_iter: int = 500):
    """Minimise a unimodal ``f`` on [lo, hi]. Returns (x, fx, iterations, (a, b))."""
    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    it = 0
    while b - a > tol and it < max_iter:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
        it += 1
    x, fx = (x1, f1) if f1 <= f2 else (x2, f2)
    return x, fx, it, (a, b)


def _slope(pair: HypothesisPair, c: float) -> float:
    """dζ/dc."""
    g = pdf(pair.alt, c) - pdf(pair.null, c)
    return g if pair.upper else -g


def youden_numeric(pair: HypothesisPair, tol: float = DEFAULT_TOL, grid_points: int = 1025) -> ThresholdResult:
    """Minimise ζ numerically: grid scan over the bracket, then golden-section refinement.

    The scan picks the best grid cell (ties go to the smallest threshold), so
    asymmetric pairs with several stationary points are handled. Golden
    section then narrows the neighbouring cells to ``tol``; last, a sign
    bisection of dζ/dc inside that final interval removes the flat-minimum
    round-off that comparing ζ values alone cannot resolve.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if grid_points < 512:
        raise DomainError("grid scan needs at least 512 points")
    lo, hi = pair.bracket()
    grid = np.linspace(lo, hi, grid_points)
    z = zeta_curve(pair, grid)
    if not np.all(np.isfinite(z)):
        raise NumericalError("ζ is not finite on the search bracket")
    i = int(np.argmin(z))
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, grid_points - 1)]

    def zeta(c):
        return bi_error(pair, c).zeta

    x, fx, iters, (ga, gb) = golden_section(zeta, a, b, tol)
    if fx > z[i]:
        x, fx = float(grid[i]), float(z[i])

    # derivative polish, local to the golden interval
    sa, sb = _slope(pair, ga), _slope(pair, gb)
    if sa < 0.0 < sb:
        for _ in range(200):
            mid = 0.5 * (ga + gb)
            if mid <= ga or mid >= gb:
                break
            if _slope(pair, mid) < 0.0:
                ga = mid
            else:
                gb = mid
            iters += 1
        cand = 0.5 * (ga + gb)
        if zeta(cand) <= fx + 4e-16:
            x = cand
    profile = bi_error(pair, x)
    if not math.isfinite(profile.zeta):
        raise NumericalError("ζ is not finite at the located minimum")
    return ThresholdResult(float(x), profile, Method.NUMERIC, iters, degenerate=bool(np.ptp(z) <= 1e-15))


def youden(pair: HypothesisPair, tol: float = DEFAULT_TOL) -> ThresholdResult:
    """Closed form when its preconditions hold, numeric minimisation otherwise."""
    if check_theorem1(pair).applicable:
        return youden_closed_form(pair)
    return youden_numeric(pair, tol)


def alpha_threshold(pair: HypothesisPair, alpha: float) -> ThresholdResult:
    """The conventional critical value with Type I error exactly ``alpha``."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    c = quantile(pair.null, 1.0 - alpha) if pair.upper else quantile(pair.null, alpha)
    return ThresholdResult(c, bi_error(pair, c), Method.ALPHA_QUANTILE)


def weighted_threshold(delta: float, s: float, p1: float) -> float:
    """δ/2 + s²·ln(p1/(1−p1))/δ, the prior-weighted cut-off on the t scale (μ0 = 0)."""
    if delta == 0 or not math.isfinite(delta):
        raise DomainError(f"delta must be finite and non-zero, got {delta}")
    if not s > 0:
        raise DomainError(f"s must be positive, got {s}")
    if not 0.0 < p1 < 1.0:
        raise DomainError(f"p1 must lie in (0, 1), got {p1}")
    return delta / 2.0 + s * s * math.log(p1 / (1.0 - p1)) / delta
