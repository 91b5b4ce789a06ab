"""Tabular output (CSV and markdown pipe tables) and CSV readers.

Column orders are fixed:

* threshold:  threshold, alpha, beta, zeta, method, iterations
* decision:   outcome, reason, observed, threshold, alpha, beta, zeta, method, iterations
* sweep:      x_value, zeta_alpha, zeta_star, xi, omega1, omega2, phi
* case-f:     d1, d2, ncp, alpha, threshold_alpha, zeta_alpha, beta_alpha,
              threshold_star, zeta_star, alpha_star, beta_star, degenerate
* simulate:   method, n, delta_hat, mu, rate, mc_error, reps

Undefined odds and φ are written as ``inf``/``nan``; NHST rows leave
``delta_hat`` empty because they pool all μ̂_A cells.
"""

from __future__ import annotations

import csv
import io
from dataclasses import fields
from typing import Iterable, Sequence

import numpy as np

from .comparison import ComparisonPoint, FCaseStudy
from .core import ErrorProfile, Method, ThresholdResult
from .decision import DecisionReport
from .simulation import RejectionTable, Rule, TableMethod

THRESHOLD_COLUMNS = ("threshold", "alpha", "beta", "zeta", "method", "iterations")
DECISION_COLUMNS = ("outcome", "reason", "observed") + THRESHOLD_COLUMNS
POINT_COLUMNS = tuple(f.name for f in fields(ComparisonPoint))
FCASE_COLUMNS = tuple(f.name for f in fields(FCaseStudy))
TABLE_COLUMNS = ("method", "n", "delta_hat", "mu", "rate", "mc_error", "reps")


def fmt(value, precision: int) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    v = float(value)
    if np.isnan(v):
        return "nan"
    if np.isinf(v):
        return "inf" if v > 0 else "-inf"
    out = f"{v:.{precision}f}"
    # avoid "-0.00"
    if out.lstrip("-").strip("0.") == "":
        out = out.lstrip("-")
    return out


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def to_markdown(header: Sequence[str], rows: Iterable[Sequence], align_right: bool = True) -> str:
    rows = [list(map(str, r)) for r in rows]
    header = list(map(str, header))
    widths = [max([3, len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
    sep = ["-" * (w - 1) + (":" if align_right else "-") for w in widths]

    def line(cells):
        return "| " + " | ".join(c.rjust(w) for c, w in zip(cells, widths)) + " |"

    return "\n".join([line(header), line(sep)] + [line(r) for r in rows]) + "\n"


def render(header, rows, fmt_name: str) -> str:
    rows = list(rows)
    if fmt_name == "csv":
        return to_csv(header, rows)
    return to_markdown(header, rows)


# ---------------------------------------------------------------------------
# row builders


def threshold_row(t: ThresholdResult, precision: int) -> list[str]:
    return [fmt(t.threshold, precision), fmt(t.alpha, precision), fmt(t.beta, precision),
            fmt(t.zeta, precision), t.method.value, str(t.iterations)]


def decision_row(r: DecisionReport, precision: int) -> list[str]:
    return [r.label(), r.reason.value, fmt(r.observed, precision)] + threshold_row(r.threshold, precision)


def point_rows(points: Iterable[ComparisonPoint], precision: int) -> list[list[str]]:
    return [[fmt(getattr(p, c), precision) for c in POINT_COLUMNS] for p in points]


def fcase_row(c: FCaseStudy, precision: int) -> list[str]:
    return [fmt(getattr(c, name), precision) for name in FCASE_COLUMNS]


def table_rows(tables: Iterable[RejectionTable], precision: int) -> list[list[str]]:
    rows = []
    for t in tables:
        errs = t.mc_errors
        for i in range(t.rates.shape[0]):
            delta = fmt(t.deltas[i], precision) if t.deltas else ""
            for j, mu in enumerate(t.mus):
                rows.append([t.method.value, str(t.n), delta, fmt(mu, precision),
                             fmt(t.rates[i, j], precision), fmt(errs[i, j], precision), str(t.reps)])
    return rows


def tables_markdown(tables: Iterable[RejectionTable], precision: int) -> str:
    """Appendix-style layout: one block per table, μ̂_A down the side, μ across."""
    out = []
    for t in tables:
        title = "Bi Error rule" if t.method is TableMethod.BI_ERROR else "NHST"
        out.append(f"### {title} ({t.method.value}), n={t.n}\n")
        corner = "mu_hat_A \\ mu"
        header = [corner] + [fmt(m, max(precision, 1)).rstrip("0").rstrip(".") or "0" for m in t.mus]
        labels = t.row_labels() if t.deltas else ["pooled"]
        rows = [[label] + [fmt(v, precision) for v in t.rates[i]] for i, label in enumerate(labels)]
        out.append(to_markdown(header, rows))
        out.append(f"\nMonte Carlo error: ±{fmt(t.mc_error, precision)} "
                   f"(2 s.e., largest cell; {t.reps} replications per cell)\n")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# readers


def _rows(text: str, expected: Sequence[str]) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != tuple(expected):
        raise ValueError(f"unexpected CSV header {reader.fieldnames}, wanted {list(expected)}")
    return list(reader)


def read_thresholds_csv(text: str) -> list[ThresholdResult]:
    return [
        ThresholdResult(float(r["threshold"]), ErrorProfile(float(r["alpha"]), float(r["beta"])),
                        Method(r["method"]), int(r["iterations"]))
        for r in _rows(text, THRESHOLD_COLUMNS)
    ]


def read_points_csv(text: str) -> list[ComparisonPoint]:
    return [ComparisonPoint(**{c: float(r[c]) for c in POINT_COLUMNS}) for r in _rows(text, POINT_COLUMNS)]


def read_fcase_csv(text: str) -> list[FCaseStudy]:
    out = []
    for r in _rows(text, FCASE_COLUMNS):
        vals = {c: float(r[c]) for c in FCASE_COLUMNS if c != "degenerate"}
        out.append(FCaseStudy(**vals, degenerate=r["degenerate"] == "1"))
    return out


def read_tables_csv(text: str, rule: Rule = Rule.AS_IMPLEMENTED) -> list[RejectionTable]:
    """Rebuild tables from the long format; table order follows first appearance."""
    groups: dict[tuple[str, int], list[dict]] = {}
    for r in _rows(text, TABLE_COLUMNS):
        groups.setdefault((r["method"], int(r["n"])), []).append(r)
    tables = []
    for (method, n), rows in groups.items():
        mus = tuple(dict.fromkeys(float(r["mu"]) for r in rows))
        deltas = tuple(dict.fromkeys(float(r["delta_hat"]) for r in rows if r["delta_hat"] != ""))
        rates = np.empty((max(len(deltas), 1), len(mus)))
        for r in rows:
            i = deltas.index(float(r["delta_hat"])) if r["delta_hat"] != "" else 0
            rates[i, mus.index(float(r["mu"]))] = float(r["rate"])
        tables.append(RejectionTable(TableMethod(method), n, mus, deltas, rates, int(rows[0]["reps"]), rule=rule))
    return tables
