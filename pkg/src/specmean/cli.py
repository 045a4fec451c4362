"""Command-line interface.

Usage:
    specmean verify --seed 42 --output report.json    # run the inequality suite
    specmean constants --x-range 0.5 10 --x-step 0.5  # tabulate K, L, delta, dK/dx
    specmean repro                                    # recompute the printed constants
    specmean compare-kappa --output kappa.csv         # kappa1 vs kappa2 over a grid

Exit codes: 0 success, 1 check failures, 2 usage or I/O error, 3 numeric failure.
"""

from __future__ import annotations

import csv
import io
import math
import sys

import click

from . import constants as kc
from .checks import FINAL_REMARK_TOL, FINAL_REMARK_VALUE, REGISTRY
from .exceptions import NumericFailure
from .suite import SuiteConfig, run_suite

__all__ = ["cli", "main", "frange", "constants_rows", "kappa_rows", "repro_rows"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

# (label, computed, printed value, tolerance)
REPRO_TARGETS = (
    ("delta(10, 0.1)", lambda: kc.delta(10.0, 0.1), 0.10068, 1e-4),
    ("delta(10, 0.9)", lambda: kc.delta(10.0, 0.9), -10.011, 1e-2),
    (
        "2*10^(1/4)/(sqrt(10)+1) - L(10, 0.1)",
        lambda: 2.0 * 10.0**0.25 / (math.sqrt(10.0) + 1.0) - kc.lower_bound_L(10.0, 0.1),
        FINAL_REMARK_VALUE,
        FINAL_REMARK_TOL,
    ),
)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_csv(header, rows, output: str) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    _emit(buf.getvalue(), output)


def _emit(text: str, output: str) -> None:
    if output == "-":
        click.echo(text, nl=False)
        return
    try:
        with open(output, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        click.echo(f"error: cannot write {output}: {exc}", err=True)
        sys.exit(EXIT_USAGE)


def frange(lo: float, hi: float, step: float) -> list[float]:
    """``lo, lo + step, ...`` up to ``hi`` inclusive, rounded to 12 decimals."""
    if step <= 0:
        raise click.BadParameter("step must be positive")
    if hi < lo:
        raise click.BadParameter(f"empty range [{lo}, {hi}]")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(n)]


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def constants_rows(xs, ts) -> list[tuple]:
    """Rows ``(x, t, K, L, K - L, delta, dK/dx)``, lexicographic in ``(x, t)``.

    ``delta`` is evaluated from its formula at every grid point, and ``dK/dx``
    takes its limit 0 where the closed form is singular.
    """
    rows = []
    for x in sorted(xs):
        for t in sorted(ts):
            K = kc.kantorovich_x(x, t)
            L = kc.lower_bound_L(x, t)
            if x == 1.0 or t in (0.0, 1.0):
                dk = 0.0
            else:
                dk = kc.kantorovich_dx(x, t)
            rows.append((float(x), float(t), K, L, K - L, kc.delta_expr(x, t), dk))
    return rows


def kappa_rows(m: float, ratios, rs, ts) -> list[tuple]:
    """Rows ``(m, M, r, t, kappa1, kappa2, sign)`` with ``sign`` in ``{-1, 0, 1}``."""
    rows = []
    for ratio in ratios:
        M = m * ratio
        for r in rs:
            for t in ts:
                b = kc.bundle(m, M, t, r)
                diff = b.kappa1 - b.kappa2
                sign = 0 if abs(diff) <= 1e-14 * max(b.kappa1, b.kappa2) else (1 if diff > 0 else -1)
                rows.append((float(m), float(M), float(r), float(t), b.kappa1, b.kappa2, sign))
    return rows


def repro_rows() -> list[tuple]:
    """Rows ``(label, computed, printed, |difference|, tolerance, ok)``."""
    out = []
    for label, fn, printed, tol in REPRO_TARGETS:
        value = fn()
        diff = abs(value - printed)
        out.append((label, value, printed, diff, tol, diff <= tol))
    return out


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Spectral geometric mean inequalities: computation and verification."""


@cli.command()
@click.option("--seed", default=42, show_default=True, type=click.IntRange(0, 2**64 - 1))
@click.option("--trials", default=200, show_default=True, type=click.IntRange(min=1))
@click.option("--dims", default="2,3,5,8", show_default=True, help="Comma-separated dimensions.")
@click.option("--ts", default="0.1,0.3,0.5,0.7,0.9", show_default=True, help="Weights t.")
@click.option("--rs", default="0.1,0.3,0.5,0.7,0.9", show_default=True, help="Powers r.")
@click.option("--tol", default=1e-8, show_default=True, type=float)
@click.option("--checks", default=None, help="Comma-separated check ids (default: all).")
@click.option("--falsify-draws", default=200, show_default=True, type=click.IntRange(min=0))
@click.option("--output", "-o", default="verify_report.json", show_default=True, help="'-' for stdout.")
@click.option("--format", "fmt", type=click.Choice(["human", "json"]), default="human", show_default=True)
def verify(seed, trials, dims, ts, rs, tol, checks, falsify_draws, output, fmt):
    """Run every inequality check and write the JSON report."""
    try:
        config = SuiteConfig(
            seed=seed,
            trials=trials,
            dims=_int_list(dims),
            ts=_float_list(ts),
            rs=_float_list(rs),
            tol=tol,
            checks=tuple(c.strip() for c in checks.split(",")) if checks else None,
            falsify_draws=falsify_draws,
        )
    except (ValueError, KeyError) as exc:
        raise click.UsageError(str(exc)) from exc
    try:
        report = run_suite(config)
    except NumericFailure as exc:
        click.echo(f"numeric failure: {exc}", err=True)
        sys.exit(EXIT_NUMERIC)
    text = report.to_json()
    if output != "-":
        _emit(text, output)
    if fmt == "json":
        click.echo(text, nl=False)
    else:
        click.echo(f"{'check':22s} {'trials':>7s} {'fail':>5s} {'min margin':>12s} {'min rel':>12s}")
        for s in report.summaries:
            d = s.to_dict()
            mark = " (falsification)" if d["falsification"] else ""
            click.echo(
                f"{d['id']:22s} {d['trials']:7d} {d['failures']:5d} "
                f"{d['min_margin']:12.4e} {d['min_relative_margin']:12.4e}{mark}"
            )
        for f in report.findings:
            click.echo(f"finding {f.id}: {f.violations}/{f.draws} violations, worst relative margin {f.min_relative_margin:.4e}")
        click.echo(
            f"failures={report.failures} discrepancies={report.discrepancies} "
            f"numeric_failures={report.numeric_failures}"
        )
    if report.failures:
        sys.exit(EXIT_FAIL)
    if report.numeric_failures:
        sys.exit(EXIT_NUMERIC)


@cli.command()
@click.option("--x-range", nargs=2, type=float, default=(0.5, 10.0), show_default=True)
@click.option("--x-step", type=float, default=0.5, show_default=True)
@click.option("--t-range", nargs=2, type=float, default=(0.0, 1.0), show_default=True)
@click.option("--t-step", type=float, default=0.1, show_default=True)
@click.option("--output", "-o", default="-", show_default=True)
def constants(x_range, x_step, t_range, t_step, output):
    """Tabulate K(x,t), L(x,t), their difference, delta(x,t) and dK/dx as CSV."""
    xs = frange(*x_range, x_step)
    if xs[0] <= 0:
        raise click.BadParameter("x values must be positive", param_hint="--x-range")
    ts = frange(*t_range, t_step)
    _write_csv(("x", "t", "K", "L", "K_minus_L", "delta", "dKdx"), constants_rows(xs, ts), output)


@cli.command()
def repro():
    """Recompute the three printed numerical values and compare."""
    rows = repro_rows()
    click.echo(f"{'quantity':40s} {'computed':>22s} {'printed':>12s} {'|diff|':>10s} {'tol':>8s}")
    for label, value, printed, diff, tol, ok in rows:
        click.echo(f"{label:40s} {value:22.15g} {printed:12.7g} {diff:10.2e} {tol:8.0e} {'ok' if ok else 'MISMATCH'}")
    if not all(r[-1] for r in rows):
        sys.exit(EXIT_FAIL)


@cli.command("compare-kappa")
@click.option("--m", "m", type=float, default=1.0, show_default=True)
@click.option("--ratios", default="1,2,5,10,20,50", show_default=True, help="Values of M/m.")
@click.option("--rs", default="0.25,0.5,0.75,1", show_default=True)
@click.option("--ts", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9", show_default=True)
@click.option("--output", "-o", default="-", show_default=True)
def compare_kappa(m, ratios, rs, ts, output):
    """Tabulate both Ando-Hiai constants; exits 1 unless both orderings occur."""
    ratios, rs, ts = _float_list(ratios), _float_list(rs), _float_list(ts)
    if m <= 0 or any(x < 1 for x in ratios):
        raise click.BadParameter("need m > 0 and every ratio M/m >= 1")
    if any(not 0 <= v <= 1 for v in rs + ts):
        raise click.BadParameter("r and t must lie in [0, 1]")
    rows = kappa_rows(m, ratios, rs, ts)
    _write_csv(("m", "M", "r", "t", "kappa1", "kappa2", "sign"), rows, output)
    signs = {row[-1] for row in rows}
    if not {1, -1} <= signs:
        click.echo("both orderings of kappa1 and kappa2 were not observed", err=True)
        sys.exit(EXIT_FAIL)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
