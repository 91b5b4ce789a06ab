"""The Bi Error decision procedure and the conventional NHST baseline."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .core import DEFAULT_TOL, HypothesisPair, ThresholdResult, alpha_threshold, youden, youden_numeric
from .errors import DomainError


class Outcome(enum.Enum):
    REJECT = "Reject"
    FAIL_TO_REJECT = "FailToReject"
    INCONCLUSIVE = "Inconclusive"


class Reason(enum.Enum):
    NONE = "None"
    ALPHA_TOO_HIGH = "AlphaTooHigh"
    BETA_TOO_HIGH = "BetaTooHigh"
    ZETA_TOO_HIGH = "ZetaTooHigh"


@dataclass(frozen=True)
class DecisionConfig:
    """Analyst-chosen upper bounds on the error rates. There are no defaults.

    ``zeta_max`` defaults to ``alpha_max + beta_max`` (capped at 2).
    """

    alpha_max: float
    beta_max: float
    zeta_max: Optional[float] = None

    def __post_init__(self):
        for name in ("alpha_max", "beta_max"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise DomainError(f"{name} must lie in (0, 1], got {v}")
        if self.zeta_max is None:
            object.__setattr__(self, "zeta_max", min(self.alpha_max + self.beta_max, 2.0))
        elif not 0.0 < self.zeta_max <= 2.0:
            raise DomainError(f"zeta_max must lie in (0, 2], got {self.zeta_max}")


@dataclass(frozen=True)
class DecisionReport:
    outcome: Outcome
    reason: Reason
    threshold: ThresholdResult
    observed: float

    def label(self) -> str:
        if self.outcome is Outcome.INCONCLUSIVE:
            return f"Inconclusive({self.reason.value})"
        return self.outcome.value


def _check_observed(observed: float) -> float:
    observed = float(observed)
    if not math.isfinite(observed):
        raise DomainError(f"observed statistic must be finite, got {observed}")
    return observed


def screen(threshold: ThresholdResult, config: DecisionConfig) -> Reason:
    """First violated bound, checked in the order α, β, ζ."""
    if threshold.alpha > config.alpha_max:
        return Reason.ALPHA_TOO_HIGH
    if threshold.beta > config.beta_max:
        return Reason.BETA_TOO_HIGH
    if threshold.zeta > config.zeta_max:
        return Reason.ZETA_TOO_HIGH
    return Reason.NONE


def run_bi_error_method(
    pair: HypothesisPair,
    config: DecisionConfig,
    observed: float,
    tol: float = DEFAULT_TOL,
    numeric: bool = False,
) -> DecisionReport:
    """Youden threshold, screened against ``config``, then compared with ``observed``.

    The closed form is used whenever its preconditions hold unless ``numeric``
    forces the minimiser. Rejection needs the statistic strictly beyond the
    threshold.
    """
    observed = _check_observed(observed)
    threshold = youden_numeric(pair, tol) if numeric else youden(pair, tol)
    reason = screen(threshold, config)
    if reason is not Reason.NONE:
        return DecisionReport(Outcome.INCONCLUSIVE, reason, threshold, observed)
    outcome = Outcome.REJECT if pair.beyond(observed, threshold.threshold) else Outcome.FAIL_TO_REJECT
    return DecisionReport(outcome, Reason.NONE, threshold, observed)


def run_nhst(pair: HypothesisPair, alpha: float, observed: float) -> DecisionReport:
    """Reject when the statistic is strictly beyond the (1 − α) null quantile.

    β at that critical value is kept in the report for comparison.
    """
    observed = _check_observed(observed)
    threshold = alpha_threshold(pair, alpha)
    outcome = Outcome.REJECT if pair.beyond(observed, threshold.threshold) else Outcome.FAIL_TO_REJECT
    return DecisionReport(outcome, Reason.NONE, threshold, observed)
