import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bierror import report
from bierror.comparison import FCaseStudy, make_point
from bierror.core import ErrorProfile, Method, ThresholdResult
from bierror.simulation import RejectionTable, SimConfig, TableMethod, run_simulation

prec = st.integers(1, 10)
unit = st.floats(0, 1)


def rounded(x, p):
    return float(f"{x:.{p}f}") if math.isfinite(x) else x


def test_fmt():
    assert report.fmt(0.123456, 3) == "0.123"
    assert report.fmt(-0.0001, 2) == "0.00"
    assert report.fmt(math.inf, 2) == "inf" and report.fmt(math.nan, 2) == "nan"
    assert report.fmt(True, 2) == "1" and report.fmt(np.int64(5), 2) == "5"


@given(c=st.floats(-1e3, 1e3), a=unit, b=unit, p=prec, it=st.integers(0, 500))
def test_threshold_round_trip(c, a, b, p, it):
    t = ThresholdResult(c, ErrorProfile(a, b), Method.NUMERIC, it)
    text = report.to_csv(report.THRESHOLD_COLUMNS, [report.threshold_row(t, p)])
    [back] = report.read_thresholds_csv(text)
    assert back.threshold == rounded(c, p) and back.alpha == rounded(a, p) and back.beta == rounded(b, p)
    assert back.method is Method.NUMERIC and back.iterations == it


@given(x=st.floats(0, 10), za=unit, zs=unit, p=prec)
def test_point_round_trip(x, za, zs, p):
    pt = make_point(x, za, zs)
    [back] = report.read_points_csv(report.to_csv(report.POINT_COLUMNS, report.point_rows([pt], p)))
    for name in report.POINT_COLUMNS:
        want, got = rounded(getattr(pt, name), p), getattr(back, name)
        assert got == want or (math.isnan(got) and math.isnan(want))


def test_fcase_round_trip():
    c = FCaseStudy(10, 10, 10, 0.05, 2.978, 0.782, 0.732, 1.388, 0.5698, 0.307, 0.2628, False)
    [back] = report.read_fcase_csv(report.to_csv(report.FCASE_COLUMNS, [report.fcase_row(c, 6)]))
    assert back == c


def test_tables_round_trip():
    tables = run_simulation(SimConfig(M=50, ns=(4, 9), mus=(0.0, 0.25), deltas=(0.5, 2.0)))
    text = report.to_csv(report.TABLE_COLUMNS, report.table_rows(tables, 4))
    back = report.read_tables_csv(text)
    assert len(back) == len(tables)
    for t, b in zip(tables, back):
        assert (t.method, t.n, t.mus, t.deltas, t.reps) == (b.method, b.n, b.mus, b.deltas, b.reps)
        np.testing.assert_array_equal(b.rates, np.round(t.rates, 4))


def test_header_checked():
    with pytest.raises(ValueError):
        report.read_thresholds_csv("a,b\n1,2\n")


def test_markdown_layout():
    t = RejectionTable(TableMethod.BI_ERROR, 10, (0.0, 0.3), (0.3, 1.0), np.array([[0.44, 0.75], [0.3, 0.6]]), 10000)
    text = report.tables_markdown([t], 2)
    lines = text.splitlines()
    assert lines[0] == "### Bi Error rule (BiError), n=10"
    assert "| mu_hat_A \\ mu |" in text and "|           0.3 | 0.44 | 0.75 |" in text
    assert "Monte Carlo error: ±0.01" in text


def test_csv_quoting():
    text = report.to_csv(["a"], [["x,y"]])
    assert text == 'a\n"x,y"\n'
