import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy import stats

from bierror import (
    DecisionConfig, DomainError, HypothesisPair, Method, Outcome, Reason, Tail, run_bi_error_method, run_nhst,
)
from bierror.core import ErrorProfile, ThresholdResult
from bierror.decision import screen
from bierror.distributions import fisher_f, normal

WIDE = HypothesisPair(normal(0, 1), normal(6, 1))
NARROW = HypothesisPair(normal(0, 1), normal(0.5, 1))


def test_reject_for_well_separated_pair():
    r = run_bi_error_method(WIDE, DecisionConfig(0.05, 0.05), 4.0)
    assert r.outcome is Outcome.REJECT and r.label() == "Reject"
    assert r.threshold.threshold == 3.0
    assert_allclose(r.threshold.alpha, stats.norm.sf(3.0), rtol=1e-12)


def test_fail_to_reject_below_threshold():
    r = run_bi_error_method(WIDE, DecisionConfig(0.05, 0.05), 2.0)
    assert r.outcome is Outcome.FAIL_TO_REJECT and r.reason is Reason.NONE


def test_threshold_itself_is_not_rejected():
    assert run_bi_error_method(WIDE, DecisionConfig(0.05, 0.05), 3.0).outcome is Outcome.FAIL_TO_REJECT


def test_inconclusive_alpha_first():
    r = run_bi_error_method(NARROW, DecisionConfig(0.05, 0.05), 10.0)
    assert r.outcome is Outcome.INCONCLUSIVE and r.reason is Reason.ALPHA_TOO_HIGH
    assert r.label() == "Inconclusive(AlphaTooHigh)"


def test_screen_order_and_zeta():
    t = ThresholdResult(0.0, ErrorProfile(0.04, 0.2), Method.CLOSED_FORM)
    assert screen(t, DecisionConfig(0.05, 0.1)) is Reason.BETA_TOO_HIGH
    assert screen(t, DecisionConfig(0.05, 0.25, zeta_max=0.2)) is Reason.ZETA_TOO_HIGH
    assert screen(t, DecisionConfig(0.05, 0.25)) is Reason.NONE
    assert screen(t, DecisionConfig(0.01, 0.01)) is Reason.ALPHA_TOO_HIGH


def test_zeta_max_default():
    assert DecisionConfig(0.05, 0.2).zeta_max == pytest.approx(0.25)
    assert DecisionConfig(1.0, 1.0).zeta_max == 2.0


@pytest.mark.parametrize("args", [(0.0, 0.1), (0.1, 1.5), (-0.1, 0.1), (0.1, 0.1, 0.0), (0.1, 0.1, 2.5)])
def test_config_validation(args):
    with pytest.raises(DomainError):
        DecisionConfig(*args)


def test_lower_tail_direction():
    pair = HypothesisPair(normal(0, 1), normal(-6, 1), Tail.LOWER)
    cfg = DecisionConfig(0.05, 0.05)
    assert run_bi_error_method(pair, cfg, -4.0).outcome is Outcome.REJECT
    assert run_bi_error_method(pair, cfg, 4.0).outcome is Outcome.FAIL_TO_REJECT


def test_numeric_option_and_f_pair():
    r = run_bi_error_method(WIDE, DecisionConfig(0.05, 0.05), 4.0, numeric=True)
    assert r.threshold.method is Method.NUMERIC
    assert abs(r.threshold.threshold - 3.0) < 1e-6
    f = HypothesisPair(fisher_f(10, 10), fisher_f(10, 10, 10))
    assert run_bi_error_method(f, DecisionConfig(0.5, 0.5), 5.0).outcome is Outcome.REJECT
    assert run_bi_error_method(f, DecisionConfig(0.05, 0.5), 5.0).reason is Reason.ALPHA_TOO_HIGH


def test_observed_must_be_finite():
    with pytest.raises(DomainError):
        run_bi_error_method(WIDE, DecisionConfig(0.05, 0.05), math.nan)


def test_nhst_baseline():
    r = run_nhst(NARROW, 0.05, 1.7)
    assert r.outcome is Outcome.REJECT
    assert_allclose(r.threshold.threshold, stats.norm.ppf(0.95), rtol=1e-12)
    assert_allclose(r.threshold.beta, stats.norm.cdf(stats.norm.ppf(0.95) - 0.5), rtol=1e-12)
    assert run_nhst(NARROW, 0.05, 1.6).outcome is Outcome.FAIL_TO_REJECT


@given(x=st.floats(-10, 10), y=st.floats(-10, 10))
def test_rejection_monotone(x, y):
    cfg = DecisionConfig(0.05, 0.05)
    lo, hi = sorted((x, y))
    if run_bi_error_method(WIDE, cfg, lo).outcome is Outcome.REJECT:
        assert run_bi_error_method(WIDE, cfg, hi).outcome is Outcome.REJECT
