"""Command-line front end.

    bierror threshold --null normal:mu=0,sigma=1 --alt normal:mu=1,sigma=1
    bierror decide    --null ... --alt ... --observed 4 --alpha-max 0.05 --beta-max 0.05
    bierror compare   sweep-delta | sweep-sigma2 | sweep-phi | case-f
    bierror simulate  --M 10000 --seed 198663 --format markdown

Distribution specs use ``kind:key=value,...``:

    normal:mu=..,sigma=..     t:df=..[,mu=..,sigma=..]     f:d1=..,d2=..[,ncp=..]
    cauchy:mu=..,sigma=..     laplace:mu=..,sigma=..       logistic:mu=..,sigma=..

Exit codes: 0 success, 2 usage error, 3 domain error (including an
inapplicable closed form), 4 numerical failure.
"""

from __future__ import annotations

import os
import sys

import click

from . import report
from .comparison import GridRange, SweepConfig, f_case_study, sweep_delta, sweep_phi, sweep_sigma2
from .core import HypothesisPair, Tail, youden_closed_form, youden_numeric
from .decision import DecisionConfig, run_bi_error_method
from .distributions import DistributionSpec, Kind
from .errors import DomainError, NumericalError
from .simulation import (
    DEFAULT_DELTAS, DEFAULT_M, DEFAULT_MUS, DEFAULT_NS, DEFAULT_SEED, Rule, SimConfig, run_simulation,
)

EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_NUMERIC = 4
SEED_ENV = "BIERR_SEED"

# kind -> (Kind, mandatory keys, optional keys with defaults)
_GRAMMAR = {
    "normal": (Kind.NORMAL, ("mu", "sigma"), {}),
    "t": (Kind.STUDENT_T, ("df",), {"mu": 0.0, "sigma": 1.0}),
    "f": (Kind.FISHER_F, ("d1", "d2"), {"ncp": 0.0}),
    "cauchy": (Kind.CAUCHY, ("mu", "sigma"), {}),
    "laplace": (Kind.LAPLACE, ("mu", "sigma"), {}),
    "logistic": (Kind.LOGISTIC, ("mu", "sigma"), {}),
}


class SpecError(DomainError):
    """A distribution spec string that cannot be turned into a DistributionSpec."""


def parse_distribution_spec(text: str) -> DistributionSpec:
    """Parse ``kind:key=value,...`` into a validated :class:`DistributionSpec`.

    >>> parse_distribution_spec("f:d1=2,d2=30,ncp=10").describe()
    'f(d1=2, d2=30, ncp=10)'
    """
    name, sep, body = text.strip().partition(":")
    name = name.strip().lower()
    if name not in _GRAMMAR:
        raise SpecError(f"unknown distribution kind {name!r} (expected one of {', '.join(_GRAMMAR)})")
    kind, required, optional = _GRAMMAR[name]
    values: dict[str, float] = {}
    for item in filter(None, (s.strip() for s in body.split(","))) if sep else ():
        key, eq, raw = item.partition("=")
        key = key.strip()
        if not eq:
            raise SpecError(f"malformed entry {item!r}; expected key=value")
        if key not in required and key not in optional:
            allowed = ", ".join(required + tuple(optional))
            raise SpecError(f"unknown key {key!r} for {name} (allowed: {allowed})")
        if key in values:
            raise SpecError(f"duplicate key {key!r}")
        try:
            values[key] = float(raw)
        except ValueError:
            raise SpecError(f"value for {key!r} is not a number: {raw.strip()!r}") from None
    missing = [k for k in required if k not in values]
    if missing:
        raise SpecError(f"missing required key(s) for {name}: {', '.join(missing)}")
    p = {**optional, **values}
    try:
        if kind is Kind.FISHER_F:
            return DistributionSpec(kind, df1=p["d1"], df2=p["d2"], noncentrality=p["ncp"])
        if kind is Kind.STUDENT_T:
            return DistributionSpec(kind, location=p["mu"], scale=p["sigma"], df1=p["df"])
        return DistributionSpec(kind, location=p["mu"], scale=p["sigma"])
    except DomainError as exc:
        raise SpecError(f"value out of range: {exc}") from None


class DistributionParam(click.ParamType):
    name = "spec"

    def convert(self, value, param, ctx):
        if isinstance(value, DistributionSpec):
            return value
        try:
            return parse_distribution_spec(value)
        except SpecError as exc:
            self.fail(str(exc), param, ctx)


class ListParam(click.ParamType):
    """Comma-separated numbers."""

    def __init__(self, cast):
        self.cast = cast
        self.name = f"{cast.__name__}-list"

    def convert(self, value, param, ctx):
        if isinstance(value, (tuple, list)):
            return tuple(self.cast(v) for v in value)
        try:
            out = tuple(self.cast(v) for v in str(value).split(",") if v.strip())
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of {self.cast.__name__}", param, ctx)
        if not out:
            self.fail("list is empty", param, ctx)
        return out


DIST = DistributionParam()


def _fmt_list(values) -> str:
    return ",".join(f"{v:g}" for v in values)


# ---------------------------------------------------------------------------
# config file


def read_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment. Keys are option names."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, eq, value = line.partition("=")
            if not eq or not key.strip():
                raise click.BadParameter(f"line {lineno}: expected key=value", param_hint="'--config'")
            out[key.strip().lstrip("-").replace("-", "_").lower()] = value.strip()
    return out


def _default_map(cmd: click.Command, flat: dict[str, str]) -> dict:
    if isinstance(cmd, click.Group):
        return {name: _default_map(sub, flat) for name, sub in cmd.commands.items()}
    names = {p.name for p in cmd.params if isinstance(p, click.Option)}
    return {k: v for k, v in flat.items() if k in names}


def _all_option_names(cmd: click.Command) -> set[str]:
    names = {p.name for p in cmd.params if isinstance(p, click.Option)}
    if isinstance(cmd, click.Group):
        for sub in cmd.commands.values():
            names |= _all_option_names(sub)
    return names


# ---------------------------------------------------------------------------
# output helpers


def output_options(default_precision: int):
    def deco(fn):
        fn = click.option("--precision", type=click.IntRange(min=1), default=default_precision,
                          show_default=True, help="Decimal places in the output.")(fn)
        fn = click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True,
                          allow_dash=True), default="-", help="Destination file ('-' for stdout).")(fn)
        fn = click.option("--format", "fmt_name", type=click.Choice(["csv", "markdown"]),
                          default="csv", show_default=True)(fn)
        return fn
    return deco


def pair_options(fn):
    fn = click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=1e-8,
                      show_default=True, help="Tolerance of the numeric minimiser.")(fn)
    fn = click.option("--numeric", is_flag=True,
                      help="Minimise ζ numerically instead of using the closed form.")(fn)
    fn = click.option("--tail", type=click.Choice([t.value for t in Tail]), default="upper",
                      show_default=True)(fn)
    fn = click.option("--alt", "alt", type=DIST, required=True, help="Alternative distribution spec.")(fn)
    fn = click.option("--null", "null", type=DIST, required=True, help="Null distribution spec.")(fn)
    return fn


def _emit(text: str, output: str) -> None:
    with click.open_file(output, "w", encoding="utf-8") as fh:
        fh.write(text)


def _pair(null, alt, tail) -> HypothesisPair:
    return HypothesisPair(null, alt, Tail(tail))


# ---------------------------------------------------------------------------
# commands


class _Root(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except NumericalError as exc:
            click.echo(f"Error: numerical failure: {exc}", err=True)
            ctx.exit(EXIT_NUMERIC)
        except DomainError as exc:
            click.echo(f"Error: {type(exc).__name__}: {exc}", err=True)
            ctx.exit(EXIT_DOMAIN)


@click.group(cls=_Root, context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              help="File of key=value defaults; explicit flags take precedence.")
@click.pass_context
def main(ctx, config_path):
    """Bi Error thresholds, decisions, comparisons and simulations."""
    if config_path:
        flat = read_config(config_path)
        unknown = sorted(set(flat) - _all_option_names(main))
        if unknown:
            raise click.BadParameter(f"unknown key(s): {', '.join(unknown)}", param_hint="'--config'")
        ctx.default_map = _default_map(main, flat)


@main.command()
@pair_options
@output_options(6)
def threshold(null, alt, tail, numeric, tol, fmt_name, output, precision):
    """Youden threshold with its α, β and ζ.

    Without --numeric the closed form is required; a pair that fails its
    preconditions exits with code 3.

    CSV columns: threshold, alpha, beta, zeta, method, iterations.
    """
    pair = _pair(null, alt, tail)
    res = youden_numeric(pair, tol) if numeric else youden_closed_form(pair)
    rows = [report.threshold_row(res, precision)]
    _emit(report.render(report.THRESHOLD_COLUMNS, rows, fmt_name), output)


@main.command()
@pair_options
@click.option("--observed", type=float, required=True, help="Observed test statistic.")
@click.option("--alpha-max", type=float, required=True, help="Largest acceptable α (no default).")
@click.option("--beta-max", type=float, required=True, help="Largest acceptable β (no default).")
@click.option("--zeta-max", type=float, default=None, help="Largest acceptable ζ [alpha-max + beta-max].")
@output_options(6)
def decide(null, alt, tail, numeric, tol, observed, alpha_max, beta_max, zeta_max,
           fmt_name, output, precision):
    """Run the Bi Error decision procedure on one observed statistic.

    The outcome column reads Reject, FailToReject or Inconclusive(<reason>).

    CSV columns: outcome, reason, observed, threshold, alpha, beta, zeta,
    method, iterations.
    """
    pair = _pair(null, alt, tail)
    if not numeric:
        youden_closed_form(pair)  # raises when the closed form does not apply
    config = DecisionConfig(alpha_max, beta_max, zeta_max)
    rep = run_bi_error_method(pair, config, observed, tol, numeric=numeric)
    _emit(report.render(report.DECISION_COLUMNS, [report.decision_row(rep, precision)], fmt_name), output)


@main.group()
def compare():
    """Cost of the α-level critical value relative to the Youden threshold.

    Sweep CSV columns: x_value, zeta_alpha, zeta_star, xi, omega1, omega2, phi
    (phi is nan where undefined).
    """


def _sweep_out(points, fmt_name, output, precision):
    _emit(report.render(report.POINT_COLUMNS, report.point_rows(points, precision), fmt_name), output)


@compare.command("sweep-delta")
@click.option("--start", type=float, default=0.1, show_default=True)
@click.option("--stop", type=float, default=6.0, show_default=True)
@click.option("--num", type=click.IntRange(min=1), default=120, show_default=True)
@click.option("--sigma2", type=float, default=2.0, show_default=True)
@click.option("--mu0", type=float, default=0.0, show_default=True)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@output_options(6)
def sweep_delta_cmd(start, stop, num, sigma2, mu0, alpha, fmt_name, output, precision):
    """ξ against the mean difference δ at fixed σ² (x_value = δ)."""
    cfg = SweepConfig(GridRange(start, stop, num), alpha=alpha, mu0=mu0, sigma2=sigma2)
    _sweep_out(sweep_delta(cfg), fmt_name, output, precision)


@compare.command("sweep-sigma2")
@click.option("--start", type=float, default=0.5, show_default=True)
@click.option("--stop", type=float, default=10.0, show_default=True)
@click.option("--num", type=click.IntRange(min=1), default=120, show_default=True)
@click.option("--delta", type=float, default=3.0, show_default=True)
@click.option("--mu0", type=float, default=0.0, show_default=True)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@output_options(6)
def sweep_sigma2_cmd(start, stop, num, delta, mu0, alpha, fmt_name, output, precision):
    """ξ against the variance σ² at fixed δ (x_value = σ²)."""
    cfg = SweepConfig(GridRange(start, stop, num), alpha=alpha, mu0=mu0, delta=delta)
    _sweep_out(sweep_sigma2(cfg), fmt_name, output, precision)


@compare.command("sweep-phi")
@click.option("--mu0", type=float, default=0.0, show_default=True)
@click.option("--sigma2", type=float, default=5.0, show_default=True)
@click.option("--muA-min", "mua_min", type=float, default=None, help="Defaults to --mu0.")
@click.option("--muA-max", "mua_max", type=float, default=2.0, show_default=True)
@click.option("--num", type=click.IntRange(min=1), default=120, show_default=True)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@output_options(6)
def sweep_phi_cmd(mu0, sigma2, mua_min, mua_max, num, alpha, fmt_name, output, precision):
    """Odds ratio φ against Cohen's d (x_value = d)."""
    lo = mu0 if mua_min is None else mua_min
    cfg = SweepConfig(GridRange(lo, mua_max, num), alpha=alpha, mu0=mu0, sigma2=sigma2)
    _sweep_out(sweep_phi(cfg), fmt_name, output, precision)


@compare.command("case-f")
@click.option("--d1", type=float, required=True)
@click.option("--d2", type=float, required=True)
@click.option("--ncp", type=float, required=True)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@output_options(6)
def case_f_cmd(d1, d2, ncp, alpha, fmt_name, output, precision):
    """Both thresholds for F(d1, d2, 0) against F(d1, d2, ncp).

    CSV columns: d1, d2, ncp, alpha, threshold_alpha, zeta_alpha, beta_alpha,
    threshold_star, zeta_star, alpha_star, beta_star, degenerate.
    """
    case = f_case_study(d1, d2, ncp, alpha)
    _emit(report.render(report.FCASE_COLUMNS, [report.fcase_row(case, precision)], fmt_name), output)


def _resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None or not env.strip():
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise click.BadParameter(f"{SEED_ENV}={env!r} is not an integer", param_hint=f"'{SEED_ENV}'")


@main.command()
@click.option("--M", "m", type=click.IntRange(min=1), default=DEFAULT_M, show_default=True,
              help="Replications per cell.")
@click.option("--ns", type=ListParam(int), default=_fmt_list(DEFAULT_NS), show_default=True)
@click.option("--mus", type=ListParam(float), default=_fmt_list(DEFAULT_MUS), show_default=True)
@click.option("--deltas", type=ListParam(float), default=_fmt_list(DEFAULT_DELTAS), show_default=True)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None,
              help=f"RNG seed [${SEED_ENV}, else {DEFAULT_SEED}].")
@click.option("--p1", type=float, default=0.5, show_default=True)
@click.option("--rule", type=click.Choice([r.value for r in Rule]), default=Rule.AS_IMPLEMENTED.value,
              show_default=True)
@click.option("--alpha", type=float, default=0.05, show_default=True, help="NHST level.")
@click.option("--backend", type=click.Choice(["auto", "numba", "numpy"]), default="auto", show_default=True)
@output_options(2)
def simulate(m, ns, mus, deltas, seed, p1, rule, alpha, backend, fmt_name, output, precision):
    """Monte Carlo rejection rates of the Bi Error rule and the t-test.

    Markdown output has one block per method and n (μ̂_A rows, μ columns)
    with a Monte Carlo error footer.

    CSV columns: method, n, delta_hat, mu, rate, mc_error, reps.
    """
    cfg = SimConfig(M=m, ns=ns, mus=mus, deltas=deltas, p1=p1, seed=_resolve_seed(seed),
                    rule=Rule(rule), alpha=alpha)
    tables = run_simulation(cfg, None if backend == "auto" else backend)
    if fmt_name == "csv":
        text = report.to_csv(report.TABLE_COLUMNS, report.table_rows(tables, precision))
    else:
        text = report.tables_markdown(tables, precision)
    _emit(text, output)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
