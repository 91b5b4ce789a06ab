"""Monte Carlo rejection rates of the Bi Error rule and the NHST t-test.

For each (n, μ, μ̂_A) cell, ``M`` samples of size n are drawn from N(μ, 1);
each sample is judged by both rules. Every replication reads its own
substream ``(seed, n_index, mu_index, delta_index, replication, attempt)``
(see :mod:`bierror.rng`), so the tables are identical whatever the backend's
thread count.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as _k
from . import _numpy_kernels as _nk
from ._jit import NUMBA_ENABLED
from .core import weighted_threshold
from .distributions import quantile, student_t
from .errors import DegenerateSampleError, DomainError
from .rng import RngState

DEFAULT_NS = (10, 20, 30, 50)
DEFAULT_MUS = (0.0, 0.3, 0.5, 0.7, 1.0)
DEFAULT_DELTAS = (0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5)
DEFAULT_SEED = 198663
DEFAULT_M = 10_000


class Rule(enum.Enum):
    AS_IMPLEMENTED = "as-implemented"  # t statistic vs δ̂/2 + s²·logit(p1)/δ̂
    AS_STATED = "as-stated"  # sample mean vs δ̂/2


class TableMethod(enum.Enum):
    BI_ERROR = "BiError"
    NHST = "NHST"


@dataclass(frozen=True)
class SimConfig:
    M: int = DEFAULT_M
    ns: tuple[int, ...] = DEFAULT_NS
    mus: tuple[float, ...] = DEFAULT_MUS
    deltas: tuple[float, ...] = DEFAULT_DELTAS
    p1: float = 0.5
    seed: int = DEFAULT_SEED
    rule: Rule = Rule.AS_IMPLEMENTED
    alpha: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, "ns", tuple(int(n) for n in self.ns))
        object.__setattr__(self, "mus", tuple(float(m) for m in self.mus))
        object.__setattr__(self, "deltas", tuple(float(d) for d in self.deltas))
        if not isinstance(self.rule, Rule):
            object.__setattr__(self, "rule", Rule(self.rule))
        if self.M < 1:
            raise DomainError(f"M must be at least 1, got {self.M}")
        if not self.ns or any(n < 2 for n in self.ns):
            raise DomainError("every sample size must be at least 2")
        if not self.mus or not self.deltas:
            raise DomainError("mus and deltas must be non-empty")
        if any(not d > 0 for d in self.deltas):
            raise DomainError("hypothesised alternative means must be positive")
        if not 0.0 < self.p1 < 1.0:
            raise DomainError(f"p1 must lie in (0, 1), got {self.p1}")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class SampleStats:
    n: int
    mean: float
    sd: float
    t_stat: float


def sample_stats(xs) -> SampleStats:
    """Mean, sample SD (n − 1 denominator) and the one-sample t statistic against 0."""
    xs = np.asarray(xs, dtype=np.float64)
    n = xs.size
    if n < 2:
        raise DomainError("need at least two observations")
    mean = float(xs.mean())
    sd = float(xs.std(ddof=1))
    if sd == 0.0:
        raise DegenerateSampleError("sample standard deviation is zero")
    return SampleStats(n, mean, sd, mean * math.sqrt(n) / sd)


def bi_error_rule(stats: SampleStats, delta_hat: float, p1: float = 0.5,
                  rule: Rule = Rule.AS_IMPLEMENTED) -> bool:
    if not delta_hat > 0:
        raise DomainError(f"delta_hat must be positive, got {delta_hat}")
    if rule is Rule.AS_STATED:
        return stats.mean > delta_hat / 2.0
    return stats.t_stat > weighted_threshold(delta_hat, stats.sd, p1)


def nhst_critical_value(n: int, alpha: float = 0.05) -> float:
    if n < 2:
        raise DomainError("need n >= 2 for a t critical value")
    return quantile(student_t(n - 1), 1.0 - alpha)


def nhst_rule(stats: SampleStats, alpha: float = 0.05) -> bool:
    return stats.t_stat > nhst_critical_value(stats.n, alpha)


@dataclass
class RejectionTable:
    """Rejection rates for one method and sample size.

    ``rates[i, j]`` is for ``deltas[i]`` and ``mus[j]``. NHST tables have a
    single row averaged over the μ̂_A cells (its rule ignores μ̂_A), so their
    ``deltas`` is empty and ``reps`` counts all pooled replications.
    """

    method: TableMethod
    n: int
    mus: tuple[float, ...]
    deltas: tuple[float, ...]
    rates: np.ndarray
    reps: int
    redraws: int = 0
    rule: Rule = field(default=Rule.AS_IMPLEMENTED)

    @property
    def mc_errors(self) -> np.ndarray:
        p = self.rates
        return 2.0 * np.sqrt(p * (1.0 - p) / self.reps)

    @property
    def mc_error(self) -> float:
        return float(self.mc_errors.max())

    def row_labels(self) -> list[str]:
        return [f"{d:g}" for d in self.deltas] if self.deltas else [""]


def default_backend() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"


def run_simulation(cfg: SimConfig, backend: str | None = None) -> list[RejectionTable]:
    """One BiError table and one aggregated NHST table per sample size, in ``cfg.ns`` order."""
    backend = backend or default_backend()
    if backend == "numba":
        if not NUMBA_ENABLED:
            raise DomainError("numba backend requested but numba is disabled or missing")
        kernel = _k.simulate_cell
    elif backend == "numpy":
        kernel = _nk.simulate_cell
    else:
        raise DomainError(f"unknown backend {backend!r}")
    log_odds = math.log(cfg.p1 / (1.0 - cfg.p1))
    as_stated = cfg.rule is Rule.AS_STATED
    root = RngState(cfg.seed)
    tables = []
    for ni, n in enumerate(cfg.ns):
        cv = nhst_critical_value(n, cfg.alpha)
        bi = np.zeros((len(cfg.deltas), len(cfg.mus)), dtype=np.int64)
        nh = np.zeros_like(bi)
        redraws = 0
        for mi, mu in enumerate(cfg.mus):
            for di, d in enumerate(cfg.deltas):
                key = root.substream(ni, mi, di).key
                b, h, r = kernel(np.uint64(key), n, mu, cfg.M, d, log_odds, cv, as_stated)
                bi[di, mi] = b
                nh[di, mi] = h
                redraws += int(r)
        tables.append(RejectionTable(TableMethod.BI_ERROR, n, cfg.mus, cfg.deltas,
                                     bi / cfg.M, cfg.M, redraws, cfg.rule))
        pooled = nh.sum(axis=0, keepdims=True) / (cfg.M * len(cfg.deltas))
        tables.append(RejectionTable(TableMethod.NHST, n, cfg.mus, (), pooled,
                                     cfg.M * len(cfg.deltas), redraws, cfg.rule))
    return tables
