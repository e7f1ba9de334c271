"""Command-line front end: deterministic fitting and reporting runs."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .approximant import ApproximantSpec, eval_product_form, verify_accuracy_bound
from .duality import AsymptoticExponent
from .errors import AsymfitError
from .fitting import FitConfig, convergence_scan, fit_ratio_polynomial, solve_ideal
from .metrics import (
    build_report,
    compare_growth,
    emit_reports,
    format_display,
    format_full,
)
from .numerics import PrecisionContext
from .series import SeriesTable, gen_partitions, gen_rect_d1, parse_series_file

DEFAULT_PRECISION = 25
DEFAULT_BUILTIN_NMAX = 20
FORMATS = ("text", "csv", "json")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Resolved run parameters after flag validation."""

    command: str
    series_sources: tuple[str, ...]
    r_values: tuple[int, ...]
    nmax: int | None
    precision: int
    fmt: str
    out: str | None
    anchors: tuple[tuple[int, int], ...] | None
    lower: int
    epsilon: Fraction | None


def _int_flag(value: str, flag: str, minimum: int) -> int:
    try:
        parsed = int(value)
    except ValueError:
        raise _UsageError(f"{flag} expects an integer, got {value!r}") from None
    if parsed < minimum:
        raise _UsageError(f"{flag} must be at least {minimum}, got {parsed}")
    return parsed


def _parse_r_list(value: str) -> tuple[int, ...]:
    out = []
    for token in value.split(","):
        out.append(_int_flag(token.strip(), "--r", 1))
    return tuple(out)


def _parse_anchors(value: str) -> tuple[tuple[int, int], ...]:
    tokens = value.split(",")
    if len(tokens) != 4:
        raise _UsageError(f"--anchors expects four cut points a,b,c,d, got {value!r}")
    cuts = [_int_flag(tok.strip(), "--anchors", 1) for tok in tokens]
    if any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise _UsageError("--anchors cut points must be strictly increasing")
    return tuple((cuts[i], cuts[i + 1]) for i in range(3))


def _parse_epsilon(value: str) -> Fraction:
    try:
        eps = Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise _UsageError(f"--epsilon expects a number, got {value!r}") from None
    if eps <= 0:
        raise _UsageError("--epsilon must be positive")
    return eps


def _effective_precision(flag_value: str | None) -> int:
    token = flag_value if flag_value is not None else os.environ.get("ASYMFIT_PRECISION")
    if token is None:
        return DEFAULT_PRECISION
    return _int_flag(token, "--precision", 10)


def _build_parser() -> _Parser:
    parser = _Parser(prog="asymfit", description="Asymptotic ratio fits for lattice series")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, multi_series=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "--series",
            action="append",
            required=True,
            metavar="SOURCE",
            help="builtin:d1, builtin:partitions, or file:PATH"
            + (" (repeatable)" if multi_series else ""),
        )
        p.add_argument("--nmax", default=None)
        p.add_argument("--out", default=None)
        return p

    add("gen", "emit a series table in the interchange format")

    fit = add("fit", "fit the ratio polynomial and print its coefficients")
    report = add("report", "full comparison report (k, c, Q/q ratios, linf)", multi_series=True)
    scan = add("scan", "leading coefficients for a list of fit degrees")
    ideal = add("ideal", "five-parameter log-space solve at the top index")
    check = add("check", "verify the product-form approximant against a bound")
    compare = add("compare", "pairwise growth-constant gaps between lattices", multi_series=True)

    for p in (fit, report, check, compare):
        p.add_argument("--r", default="6")
    scan.add_argument("--r", default="1,2,3,4,5,6")
    for p in (fit, report, scan, ideal, check, compare):
        p.add_argument("--precision", default=None)
        p.add_argument("--format", default="text", dest="fmt", choices=FORMATS)
    report.add_argument("--anchors", default=None)
    report.add_argument("--lower", default="8")
    check.add_argument("--epsilon", default=None)
    return parser


def _load_series(source: str, nmax: int | None, exact_length: bool = False) -> SeriesTable:
    """Materialize a series source.

    For analysis commands --nmax only places the fit window, so builtins are
    generated at least to the default length and files are never truncated;
    gen asks for exact_length and gets precisely nmax entries.
    """
    if exact_length or nmax is None:
        length = nmax if nmax is not None else DEFAULT_BUILTIN_NMAX
    else:
        length = max(nmax, DEFAULT_BUILTIN_NMAX)
    if source == "builtin:d1":
        return gen_rect_d1(length)
    if source == "builtin:partitions":
        return gen_partitions(length)
    if source.startswith("file:"):
        table = parse_series_file(Path(source[5:]).read_text())
        if exact_length and nmax is not None and nmax < table.nmax:
            table = SeriesTable(
                table.values[: nmax - table.first + 1],
                sign=table.sign,
                meta=table.meta,
                first=table.first,
            )
        return table
    raise _UsageError(
        f"--series expects builtin:d1, builtin:partitions, or file:PATH, got {source!r}"
    )


def _tabulate(rows: list[list[str]], fmt: str) -> str:
    if fmt == "csv":
        import csv as _csv
        import io as _io

        buf = _io.StringIO()
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerows(rows)
        return buf.getvalue()
    widths = [max(len(row[j]) for row in rows) for j in range(len(rows[0]))]
    lines = []
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _json_payload(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit_fit(series, poly, r, nmax, precision, fmt, ctx) -> str:
    if fmt == "json":
        return _json_payload(
            {
                "fit": {
                    "lattice": series.meta.name,
                    "sign": poly.sign,
                    "r": r,
                    "nmax": nmax,
                    "precision": precision,
                    "c": [format_full(v, ctx) for v in poly.c],
                    "display": {"c": [format_display(v, ctx) for v in poly.c]},
                }
            }
        )
    rows = [
        ["parameter", series.meta.name],
        ["sign", poly.sign],
        ["r", str(r)],
        ["nmax", str(nmax)],
        ["precision", str(precision)],
    ]
    for j, v in enumerate(poly.c):
        rows.append([f"c{j}", format_display(v, ctx)])
    return _tabulate(rows, fmt)


def _emit_scan(series, scan_rows, top, precision, fmt, ctx) -> str:
    if fmt == "json":
        full_rows = []
        disp_rows = []
        for row in scan_rows:
            full_rows.append(
                {
                    "r": row.r,
                    "c0": format_full(row.c0, ctx),
                    "c1": None if row.c1 is None else format_full(row.c1, ctx),
                }
            )
            disp_rows.append(
                {
                    "r": row.r,
                    "c0": format_display(row.c0, ctx),
                    "c1": None if row.c1 is None else format_display(row.c1, ctx),
                }
            )
        return _json_payload(
            {
                "scan": {
                    "lattice": series.meta.name,
                    "nmax": top,
                    "precision": precision,
                    "rows": full_rows,
                    "display": disp_rows,
                }
            }
        )
    rows = [["r", "c0", "c1"]]
    for row in scan_rows:
        rows.append(
            [
                str(row.r),
                format_display(row.c0, ctx),
                "" if row.c1 is None else format_display(row.c1, ctx),
            ]
        )
    return _tabulate(rows, fmt)


def _emit_ideal(series, k: AsymptoticExponent, top, precision, fmt, ctx) -> str:
    labels = ("ln_c", "k_minus1", "k0", "k1", "k2")
    values = (k.ln_c, k.k_minus1, k.k0, k.k1, k.k2)
    if fmt == "json":
        body = {
            "lattice": series.meta.name,
            "top": top,
            "precision": precision,
            "display": {},
        }
        for label, value in zip(labels, values):
            body[label] = format_full(value, ctx)
            body["display"][label] = format_display(value, ctx)
        return _json_payload({"ideal": body})
    rows = [
        ["parameter", series.meta.name],
        ["top", str(top)],
        ["precision", str(precision)],
    ]
    for label, value in zip(labels, values):
        rows.append([label, format_display(value, ctx)])
    return _tabulate(rows, fmt)


def _emit_check(series, spec, outcome, precision, fmt, ctx) -> str:
    if fmt == "json":
        return _json_payload(
            {
                "check": {
                    "lattice": series.meta.name,
                    "r": spec.r,
                    "k_anchor": spec.k_anchor,
                    "precision": precision,
                    "epsilon": format_full(outcome.epsilon, ctx),
                    "passed": outcome.passed,
                    "worst_index": outcome.worst_index,
                    "worst_error": format_full(outcome.worst_error, ctx),
                }
            }
        )
    rows = [
        ["parameter", series.meta.name],
        ["r", str(spec.r)],
        ["k_anchor", str(spec.k_anchor)],
        ["precision", str(precision)],
        ["epsilon", format_display(outcome.epsilon, ctx)],
        ["passed", "true" if outcome.passed else "false"],
        ["worst_index", str(outcome.worst_index)],
        ["worst_error", format_display(outcome.worst_error, ctx)],
    ]
    return _tabulate(rows, fmt)


def _emit_compare(pairs, precision, fmt, ctx) -> str:
    if fmt == "json":
        return _json_payload(
            {
                "compare": [
                    {
                        "a": a,
                        "b": b,
                        "gap": format_full(gap, ctx),
                        "gap_display": format_display(gap, ctx),
                    }
                    for a, b, gap in pairs
                ],
                "precision": precision,
            }
        )
    rows = [["a", "b", "gap"]]
    for a, b, gap in pairs:
        rows.append([a, b, format_display(gap, ctx)])
    return _tabulate(rows, fmt)


def _resolve(args) -> RunConfig:
    sources = tuple(args.series)
    if args.command not in ("report", "compare") and len(sources) != 1:
        raise _UsageError(f"{args.command} takes exactly one --series")
    if args.command == "compare" and len(sources) < 2:
        raise _UsageError("compare needs at least two --series")
    nmax = None if args.nmax is None else _int_flag(args.nmax, "--nmax", 1)
    r_values = _parse_r_list(getattr(args, "r", "6"))
    if args.command != "scan" and len(r_values) != 1:
        raise _UsageError("--r takes a single integer here")
    precision = _effective_precision(getattr(args, "precision", None))
    anchors = None
    if getattr(args, "anchors", None) is not None:
        anchors = _parse_anchors(args.anchors)
    lower = _int_flag(getattr(args, "lower", "8"), "--lower", 1)
    epsilon = None
    if args.command == "check":
        if args.epsilon is None:
            raise _UsageError("check requires --epsilon")
        epsilon = _parse_epsilon(args.epsilon)
    return RunConfig(
        command=args.command,
        series_sources=sources,
        r_values=r_values,
        nmax=nmax,
        precision=precision,
        fmt=getattr(args, "fmt", "text"),
        out=args.out,
        anchors=anchors,
        lower=lower,
        epsilon=epsilon,
    )


def _dispatch(cfg: RunConfig) -> tuple[str, int]:
    ctx = PrecisionContext(cfg.precision)
    r = cfg.r_values[0]
    if cfg.command == "gen":
        from .series import serialize_series

        table = _load_series(cfg.series_sources[0], cfg.nmax, exact_length=True)
        return serialize_series(table), 0
    if cfg.command == "fit":
        series = _load_series(cfg.series_sources[0], cfg.nmax)
        fit_cfg = FitConfig(r=r, nmax=cfg.nmax)
        poly = fit_ratio_polynomial(series, fit_cfg, ctx)
        _, top = fit_cfg.resolve(series)
        return _emit_fit(series, poly, r, top, cfg.precision, cfg.fmt, ctx), 0
    if cfg.command == "report":
        reports = []
        for source in cfg.series_sources:
            series = _load_series(source, cfg.nmax)
            reports.append(
                build_report(
                    series,
                    FitConfig(r=r, nmax=cfg.nmax),
                    ctx,
                    anchors=cfg.anchors,
                    linf_lower=cfg.lower,
                )
            )
        return emit_reports(reports, cfg.fmt), 0
    if cfg.command == "scan":
        series = _load_series(cfg.series_sources[0], cfg.nmax)
        rows = convergence_scan(series, cfg.r_values, cfg.nmax, ctx)
        top = cfg.nmax if cfg.nmax is not None else series.nmax
        return _emit_scan(series, rows, top, cfg.precision, cfg.fmt, ctx), 0
    if cfg.command == "ideal":
        series = _load_series(cfg.series_sources[0], cfg.nmax)
        k = solve_ideal(series, cfg.nmax, ctx)
        top = cfg.nmax if cfg.nmax is not None else series.nmax
        return _emit_ideal(series, k, top, cfg.precision, cfg.fmt, ctx), 0
    if cfg.command == "check":
        series = _load_series(cfg.series_sources[0], cfg.nmax)
        fit_cfg = FitConfig(r=r, nmax=cfg.nmax)
        poly = fit_ratio_polynomial(series, fit_cfg, ctx)
        _, top = fit_cfg.resolve(series)
        spec = ApproximantSpec(r=r, k_anchor=top - r, c=poly)
        approx = {i: eval_product_form(series, spec, i) for i in series.indices()}
        outcome = verify_accuracy_bound(series, approx, cfg.epsilon)
        text = _emit_check(series, spec, outcome, cfg.precision, cfg.fmt, ctx)
        return text, 0 if outcome.passed else 1
    if cfg.command == "compare":
        reports = []
        for source in cfg.series_sources:
            series = _load_series(source, cfg.nmax)
            reports.append(build_report(series, FitConfig(r=r, nmax=cfg.nmax), ctx))
        return _emit_compare(compare_growth(reports), cfg.precision, cfg.fmt, ctx), 0
    raise _UsageError(f"unknown command {cfg.command!r}")


def run(argv=None) -> int:
    """Execute one command line; returns the process exit code."""
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _resolve(args)
        text, code = _dispatch(cfg)
        if cfg.out is not None:
            Path(cfg.out).write_text(text)
        else:
            sys.stdout.write(text)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (AsymfitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return code


def main() -> None:
    sys.exit(run())
