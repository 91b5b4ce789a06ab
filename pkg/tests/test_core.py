import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy import stats

from bierror import (
    DomainError, HypothesisPair, Method, Tail, TheoremInapplicable, alpha_threshold, bi_error,
    check_theorem1, youden, youden_closed_form, youden_numeric, zeta_curve,
)
from bierror.core import golden_section, weighted_threshold
from bierror.distributions import cauchy, fisher_f, laplace, logistic, normal, student_t

# Youden points located with scipy (brentq on the density difference)
F_ORACLE = {
    (10, 10, 10): (1.3879392196089246, 0.5697807879803636, 0.3069702771353114, 0.26281051084505214),
    (2, 30, 10): (2.353410284966994, 0.23552492407748626, 0.11235602409280461, 0.12316889998468165),
}

location = st.floats(-20, 20)
gap = st.floats(0.0, 8.0)
scale = st.floats(0.1, 5.0)
family = st.sampled_from([normal, cauchy, laplace, logistic, lambda m, s: student_t(4, m, s)])


def test_bi_error_definition_upper_and_lower():
    up = HypothesisPair(normal(0, 1), normal(2, 1), Tail.UPPER)
    p = bi_error(up, 0.7)
    assert_allclose(p.alpha, stats.norm.sf(0.7), rtol=1e-13)
    assert_allclose(p.beta, stats.norm.cdf(0.7, 2, 1), rtol=1e-13)
    assert p.zeta == p.alpha + p.beta
    lo = HypothesisPair(normal(0, 1), normal(-2, 1), Tail.LOWER)
    q = bi_error(lo, -0.7)
    assert_allclose([q.alpha, q.beta], [p.alpha, p.beta], rtol=1e-13)


def test_zeta_curve_matches_pointwise():
    pair = HypothesisPair(fisher_f(3, 12), fisher_f(3, 12, 6))
    cs = np.linspace(0.1, 6, 17)
    assert_allclose(zeta_curve(pair, cs), [bi_error(pair, c).zeta for c in cs], rtol=1e-14)


@given(fam=family, mu0=location, d=gap, s=scale, c=st.floats(-60, 60))
def test_zeta_bounds(fam, mu0, d, s, c):
    z = bi_error(HypothesisPair(fam(mu0, s), fam(mu0 + d, s)), c).zeta
    assert 0.0 <= z <= 2.0


def test_closed_form_midpoint():
    r = youden_closed_form(HypothesisPair(normal(0, 1), normal(1, 1)))
    assert r.threshold == 0.5 and r.method is Method.CLOSED_FORM
    assert_allclose(r.zeta, 2 * stats.norm.cdf(-0.5), rtol=1e-13)
    assert not r.degenerate


def test_closed_form_lower_tail():
    r = youden_closed_form(HypothesisPair(laplace(3, 2), laplace(-1, 2), Tail.LOWER))
    assert r.threshold == 1.0
    assert_allclose(r.alpha, r.beta, rtol=1e-13)


def test_degenerate_pair():
    r = youden_closed_form(HypothesisPair(normal(2, 1), normal(2, 1)))
    assert r.degenerate and r.threshold == 2.0
    assert_allclose(r.zeta, 1.0, rtol=1e-14)
    n = youden_numeric(HypothesisPair(normal(2, 1), normal(2, 1)))
    assert n.degenerate
    assert_allclose(n.zeta, 1.0, rtol=1e-14)


@pytest.mark.parametrize("pair", [
    HypothesisPair(normal(0, 1), normal(0, 2)),
    HypothesisPair(normal(0, 1), normal(1, 2)),
    HypothesisPair(normal(0, 1), cauchy(1, 1)),
    HypothesisPair(student_t(3), student_t(5, 1)),
    HypothesisPair(fisher_f(10, 10), fisher_f(10, 10, 10)),
])
def test_closed_form_inapplicable(pair):
    assert not check_theorem1(pair).applicable
    with pytest.raises(TheoremInapplicable):
        youden_closed_form(pair)


def test_theorem1_report_fields():
    r = check_theorem1(HypothesisPair(normal(0, 1), normal(0, 2)))
    assert r.symmetric and r.tail_decreasing and not r.equal_scale
    r = check_theorem1(HypothesisPair(fisher_f(2, 3), fisher_f(2, 3, 1)))
    assert not r.symmetric


@given(fam=family, mu0=location, d=st.floats(0.01, 8.0), s=scale, upper=st.booleans())
@settings(max_examples=150, deadline=None)
def test_numeric_agrees_with_closed_form(fam, mu0, d, s, upper):
    assume(d / s <= 30)  # beyond this ζ underflows to a flat zero plateau
    pair = HypothesisPair(fam(mu0, s), fam(mu0 + d if upper else mu0 - d, s),
                          Tail.UPPER if upper else Tail.LOWER)
    cf = youden_closed_form(pair)
    num = youden_numeric(pair)
    assert abs(cf.threshold - num.threshold) <= 1e-6 * max(1.0, s)
    assert num.zeta >= cf.zeta - 1e-14


@pytest.mark.parametrize("key", list(F_ORACLE))
def test_numeric_f_pairs(key):
    d1, d2, ncp = key
    c, z, a, b = F_ORACLE[key]
    r = youden_numeric(HypothesisPair(fisher_f(d1, d2), fisher_f(d1, d2, ncp)))
    assert r.method is Method.NUMERIC
    assert_allclose(r.threshold, c, atol=1e-7)
    assert_allclose([r.zeta, r.alpha, r.beta], [z, a, b], atol=1e-10)


def test_numeric_unequal_variance_normal():
    # first crossing of the N(0,1) and N(1,4) densities, found with scipy
    r = youden(HypothesisPair(normal(0, 1), normal(1, 2)))
    assert r.method is Method.NUMERIC
    assert_allclose(r.threshold, 1.180878318298509, atol=1e-7)
    assert_allclose(r.zeta, 0.6548564130046464, atol=1e-12)


@pytest.mark.parametrize("pair", [
    HypothesisPair(normal(0, 1), normal(1, 2)),
    HypothesisPair(fisher_f(2, 30), fisher_f(2, 30, 10)),
    HypothesisPair(student_t(3, 0, 1), student_t(3, 2, 1), Tail.UPPER),
])
def test_numeric_is_grid_minimum(pair):
    r = youden_numeric(pair)
    lo, hi = pair.bracket()
    assert np.all(r.zeta <= zeta_curve(pair, np.linspace(lo, hi, 10_001)) + 1e-14)


def test_youden_dispatch():
    assert youden(HypothesisPair(normal(0, 1), normal(3, 1))).method is Method.CLOSED_FORM
    assert youden(HypothesisPair(fisher_f(2, 3), fisher_f(2, 3, 4))).method is Method.NUMERIC


def test_numeric_arguments():
    pair = HypothesisPair(normal(0, 1), normal(1, 1))
    with pytest.raises(DomainError):
        youden_numeric(pair, tol=0.0)
    with pytest.raises(DomainError):
        youden_numeric(pair, grid_points=100)


def test_alpha_threshold_exact_level():
    r = alpha_threshold(HypothesisPair(normal(0, 1), normal(2, 1)), 0.05)
    assert_allclose(r.threshold, 1.6448536269514722, rtol=1e-12)
    assert_allclose(r.alpha, 0.05, rtol=1e-12)
    assert_allclose(r.beta, stats.norm.cdf(1.6448536269514722 - 2), rtol=1e-12)
    lo = alpha_threshold(HypothesisPair(normal(0, 1), normal(-2, 1), Tail.LOWER), 0.05)
    assert_allclose(lo.threshold, -1.6448536269514722, rtol=1e-12)
    with pytest.raises(DomainError):
        alpha_threshold(HypothesisPair(normal(0, 1), normal(2, 1)), 1.0)


@pytest.mark.parametrize("null,alt,tail", [
    (normal(0, 1), normal(-1, 1), Tail.UPPER),
    (normal(0, 1), normal(1, 1), Tail.LOWER),
    (fisher_f(2, 3, 2), fisher_f(2, 3, 1), Tail.UPPER),
    (fisher_f(2, 3), fisher_f(2, 3), Tail.LOWER),
    (normal(0, 1), fisher_f(2, 3, 1), Tail.UPPER),
])
def test_pair_orientation(null, alt, tail):
    with pytest.raises(DomainError):
        HypothesisPair(null, alt, tail)


def test_bi_error_rejects_nan():
    with pytest.raises(DomainError):
        bi_error(HypothesisPair(normal(0, 1), normal(1, 1)), math.nan)


def test_golden_section_parabola():
    x, fx, it, (a, b) = golden_section(lambda v: (v - 1.234) ** 2, -5.0, 5.0, 1e-10)
    assert abs(x - 1.234) < 1e-9 and a <= x <= b and b - a <= 1e-10 and it > 10


@given(d=st.floats(0.1, 5), s=st.floats(0.1, 3), p1=st.floats(0.01, 0.99))
def test_weighted_threshold(d, s, p1):
    t = weighted_threshold(d, s, p1)
    assert_allclose(t, d / 2 + s * s * math.log(p1 / (1 - p1)) / d, rtol=1e-12, atol=1e-12)
    assume(abs(p1 - 0.5) > 1e-3)
    assert (t > d / 2) == (p1 > 0.5)


def test_weighted_threshold_domain():
    for args in [(0.0, 1.0, 0.5), (1.0, 0.0, 0.5), (1.0, 1.0, 1.0)]:
        with pytest.raises(DomainError):
            weighted_threshold(*args)
