"""Command-line front end: evaluation, tabulation, certification."""
from __future__ import annotations

import csv
import io
import json
import math
import sys

import click
import numpy as np

from . import arc, bounds, inverse, verifier
from .constants import k_const, omega
from .errors import LemniscateError

MAX_DIGITS = 15
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

_ARC_OF = {"sl": "arcsl", "slh": "arcslh", "tl": "arctl", "tlh": "arctlh"}
_INVERSE_OF = {v: k for k, v in _ARC_OF.items()}
_INVERSE_DERIVATIVE = {"sl": inverse.d_sl, "slh": inverse.d_slh,
                       "tl": inverse.d_tl, "tlh": inverse.d_tlh}


def fmt(v: float | None) -> str:
    """Shortest representation that round-trips, capped at 15 significant digits."""
    if v is None:
        return ""
    if not math.isfinite(v):
        return repr(v)
    for digits in range(1, MAX_DIGITS + 1):
        s = format(v, f".{digits}g")
        if float(s) == v:
            return s
    return format(v, f".{MAX_DIGITS}g")


def _rounded(v):
    return None if v is None else float(fmt(v))


# ------------------------------------------------------------------ evaluation

def _eval_arc(name, x, cfg):
    out = arc.ARC_FUNCTIONS[name](x)
    return out.value, out.abs_error


def _eval_inverse(name, x, cfg):
    y = inverse.INVERSE_FUNCTIONS[name](x, cfg)
    if y == 0:
        return y, 0.0
    # the residual lives in the arc domain; map it through the slope
    back = arc.ARC_FUNCTIONS[_ARC_OF[name]](y)
    slope = abs(_INVERSE_DERIVATIVE[name](x, cfg))
    return y, (abs(back.value - x) + back.abs_error) * slope + math.ulp(y)


def _ratio_or_one(f):
    def value(x, cfg):
        if x == 0:
            return 1.0, 0.0
        return f(x, cfg), None
    return value


_COLUMNS = {
    "tlh_over_x": _ratio_or_one(lambda x, cfg: inverse.tlh(x, cfg) / x),
    "x_over_slh": _ratio_or_one(lambda x, cfg: x / inverse.slh(x, cfg)),
}


def known_functions() -> list[str]:
    names = [f.value for f in bounds.FunctionId]
    names += [fid.name for fid in bounds.all_aux_ids()]
    return names + list(_COLUMNS)


def evaluate(name: str, x: float, cfg: inverse.InversionConfig) -> tuple[float, float | None]:
    """Value and absolute error estimate (None when no estimate exists)."""
    if name in arc.ARC_FUNCTIONS:
        return _eval_arc(name, x, cfg)
    if name in inverse.INVERSE_FUNCTIONS:
        return _eval_inverse(name, x, cfg)
    if name in _COLUMNS:
        return _COLUMNS[name](x, cfg)
    return bounds.aux(name, x), None


def _check_name(name):
    if name not in known_functions():
        raise click.BadParameter(f"unknown function {name!r}; choose from {', '.join(known_functions())}")
    return name


def _config(tol):
    try:
        return inverse.InversionConfig(tol=tol)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--tol") from None


def _die(message):
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_USAGE)


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(text):
    click.echo(text, nl=not text.endswith("\n"))


# ------------------------------------------------------------------ commands

format_option = click.option("--format", "fmt_", type=click.Choice(["csv", "json"]),
                             default="csv", show_default=True, help="Output format.")
tol_option = click.option("--tol", type=float, default=1e-12, show_default=True,
                          help="Tolerance forwarded to the inverse-function solvers.")
points_option = click.option("--points", type=click.IntRange(min=2), default=None,
                             help="Grid size override for the verifier.")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact", prog_name="lemniscate")
def cli():
    """Lemniscate functions: evaluate, tabulate and certify."""


def _eval_command(name, x, fmt_, tol):
    cfg = _config(tol)
    try:
        value, err = evaluate(name, x, cfg)
    except LemniscateError as exc:
        _die(exc)
    if fmt_ == "json":
        _emit(json.dumps({"function": name, "x": _rounded(x), "value": _rounded(value),
                          "abs_error": _rounded(err)}))
    else:
        _emit(_csv_text(["function", "x", "value", "abs_error"], [[name, fmt(x), fmt(value), fmt(err)]]))


# so that negative abscissas are not parsed as options
_NUMERIC = {"ignore_unknown_options": True}


@cli.command("eval", context_settings=_NUMERIC)
@click.argument("function", callback=lambda ctx, p, v: _check_name(v))
@click.argument("x", type=float)
@format_option
@tol_option
def eval_cmd(function, x, fmt_, tol):
    """Evaluate FUNCTION at X and print the value with an error estimate."""
    _eval_command(function, x, fmt_, tol)


@cli.command("invert", context_settings=_NUMERIC)
@click.argument("function")
@click.argument("x", type=float)
@format_option
@tol_option
def invert_cmd(function, x, fmt_, tol):
    """Evaluate an inverse function (sl, slh, tl, tlh) at X.

    The arc name may be given instead: ``invert arcsl 0.5`` evaluates sl(0.5).
    """
    name = _INVERSE_OF.get(function, function)
    if name not in inverse.INVERSE_FUNCTIONS:
        raise click.BadParameter(f"{function!r} is not an inverse function", param_hint="FUNCTION")
    _eval_command(name, x, fmt_, tol)


@cli.command("table", context_settings=_NUMERIC)
@click.argument("functions")
@click.argument("start", type=float)
@click.argument("stop", type=float)
@click.argument("steps", type=click.IntRange(min=1))
@format_option
@tol_option
def table_cmd(functions, start, stop, steps, fmt_, tol):
    """Tabulate comma-separated FUNCTIONS on STEPS equally spaced points
    from START to STOP."""
    names = [_check_name(n.strip()) for n in functions.split(",") if n.strip()]
    if not names:
        raise click.BadParameter("no functions given", param_hint="FUNCTIONS")
    if steps == 1 and start != stop:
        raise click.BadParameter("a single step needs START == STOP", param_hint="STEPS")
    if steps > 1 and not start < stop:
        raise click.BadParameter("need START < STOP", param_hint="START")
    cfg = _config(tol)
    xs = np.linspace(start, stop, steps) if steps > 1 else np.array([start])
    rows = []
    for x in xs:
        try:
            rows.append((float(x), [evaluate(n, float(x), cfg)[0] for n in names]))
        except LemniscateError as exc:
            _die(f"at x={fmt(float(x))}: {exc}")
    if fmt_ == "json":
        records = [{"x": _rounded(x), **{n: _rounded(v) for n, v in zip(names, vals)}}
                   for x, vals in rows]
        _emit(json.dumps(records))
    else:
        _emit(_csv_text(["x", *names], [[fmt(x), *map(fmt, vals)] for x, vals in rows]))


@cli.command("check")
@click.argument("suite", default="all")
@points_option
@click.option("--format", "fmt_", type=click.Choice(["text", "csv", "json"]), default="text",
              show_default=True, help="Report format.")
@click.option("--omega-override", type=float, default=None, hidden=True)
def check_cmd(suite, points, fmt_, omega_override):
    """Run the certification battery, or the suite or check named SUITE.

    Exit status is 0 when every selected check passes and 1 otherwise.
    """
    points = points or verifier.DEFAULT_POINTS
    checks = list(verifier.battery(omega_override, points))
    wanted = set(verifier.select([n for n, _ in checks], suite))
    if not wanted:
        _die(f"no check or suite named {suite!r}; suites: {', '.join(verifier.SUITES)}")
    reports = [thunk() for name, thunk in checks if name in wanted]
    if fmt_ == "json":
        _emit(json.dumps([r.as_dict() for r in reports], indent=1))
    elif fmt_ == "csv":
        _emit(_csv_text(["check", "verdict", "points", "worst_margin", "worst_location", "notes"],
                        [[r.check_name, r.verdict, r.points_tested, fmt(r.worst_margin),
                          fmt(r.worst_location), r.notes] for r in reports]))
    else:
        width = max(len(r.check_name) for r in reports)
        for r in reports:
            click.echo(f"{r.verdict.upper():4}  {r.check_name:<{width}}  "
                       f"margin {fmt(r.worst_margin):>22}  at {fmt(r.worst_location):>22}  {r.notes}")
        failed = sum(not r.passed for r in reports)
        click.echo(f"{len(reports) - failed}/{len(reports)} checks passed")
    if any(not r.passed for r in reports):
        sys.exit(EXIT_CHECK_FAILED)


@cli.command("constants")
@click.option("--format", "fmt_", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def constants_cmd(fmt_):
    """Print the lemniscate constants and the derived range endpoints."""
    w, kk = omega(), k_const()
    rows = [("ω", w), ("K = √2ω", kk), ("1/(ω-1)", 1 / (w - 1)), ("√2ω-1", kk - 1),
            ("ω-1", w - 1), ("1/(√2ω-1)", 1 / (kk - 1))]
    if fmt_ == "json":
        _emit(json.dumps({label: _rounded(v) for label, v in rows}, ensure_ascii=False))
    else:
        _emit(_csv_text(["constant", "value"], [[label, fmt(v)] for label, v in rows]))


@cli.command("crossing")
@points_option
@click.option("--format", "fmt_", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def crossing_cmd(points, fmt_):
    """Print the abscissa in (0, ω) where tlh(x)/x and x/slh(x) cross."""
    f, g = verifier.crossing_functions()
    try:
        x = verifier.find_crossing(f, g, (0.0, omega()), points or verifier.DEFAULT_POINTS)
    except LemniscateError as exc:
        _die(exc)
    if fmt_ == "json":
        _emit(json.dumps({"crossing": _rounded(x), "value": _rounded(f(x))}))
    else:
        _emit(_csv_text(["crossing", "value"], [[fmt(x), fmt(f(x))]]))


def main(argv=None):
    cli.main(args=argv, prog_name="lemniscate")


if __name__ == "__main__":
    main()
