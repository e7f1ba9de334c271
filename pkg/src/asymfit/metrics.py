"""Comparison metrics (Q/q ratios, linf error), report assembly, and emitters."""
from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .approximant import log_exp_core, model_ratio
from .duality import AsymptoticExponent, k_from_c
from .errors import DomainError, LengthError, ParseError, ZeroCoefficient
from .fitting import FitConfig, RatioPolynomial, fit_ratio_polynomial
from .numerics import DEFAULT_CONTEXT, PrecisionContext, is_rational
from .series import LatticeMeta, SeriesTable

AnchorPair = tuple[int, int]

DISPLAY_DIGITS = 5


def default_anchors(nmax: int) -> tuple[AnchorPair, AnchorPair, AnchorPair]:
    """Standard four-step anchor pairs; the last one tracks a short table."""
    third = (16, 20) if nmax >= 20 else (nmax - 4, nmax)
    return ((8, 12), (12, 16), third)


def exact_ratios(series: SeriesTable, anchors) -> tuple:
    """Q_j = |b(hi)/b(lo)| from the true coefficients, exact."""
    out = []
    for lo, hi in anchors:
        denom = series[lo]
        if denom == 0:
            raise ZeroCoefficient(lo)
        out.append(abs(series[hi] / denom))
    return tuple(out)


def model_ratios(
    k: AsymptoticExponent, anchors, ctx: PrecisionContext = DEFAULT_CONTEXT
) -> tuple:
    """q_j = exp of the constant-free log-magnitude difference across each anchor."""
    out = []
    for lo, hi in anchors:
        out.append(ctx.exp(log_exp_core(k, hi, ctx) - log_exp_core(k, lo, ctx)))
    return tuple(out)


def linf_error(
    series: SeriesTable,
    k: AsymptoticExponent,
    lower: int = 8,
    upper: int | None = None,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
):
    """Worst relative ratio mismatch over lower < i <= upper."""
    top = upper if upper is not None else series.nmax
    if top <= lower:
        raise DomainError("need upper > lower for the error range")
    worst = None
    for i in range(lower + 1, top + 1):
        exact = abs(series.ratio(i))
        model = model_ratio(k, i, ctx)
        err = abs(ctx.real(exact) - model) / ctx.real(exact)
        if worst is None or err > worst:
            worst = err
    return worst


@dataclass(frozen=True)
class ComparisonReport:
    """Everything one fitted lattice contributes to the comparison tables."""

    lattice: LatticeMeta
    sign: str
    r: int
    nmax: int
    precision: int
    k: AsymptoticExponent
    c: RatioPolynomial
    Q: tuple
    q: tuple
    linf: object
    anchors: tuple[AnchorPair, ...]
    linf_lower: int = 8


def build_report(
    series: SeriesTable,
    cfg: FitConfig = FitConfig(),
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    anchors=None,
    linf_lower: int = 8,
) -> ComparisonReport:
    """Fit, transform, and measure one series; storage keeps full precision."""
    nlo, nhi = cfg.resolve(series)
    poly = fit_ratio_polynomial(series, cfg, ctx)
    k = k_from_c(poly, ctx)
    pairs = tuple(tuple(p) for p in anchors) if anchors else default_anchors(nhi)
    return ComparisonReport(
        lattice=series.meta,
        sign=series.sign,
        r=cfg.r,
        nmax=nhi,
        precision=ctx.significant_digits,
        k=k,
        c=poly,
        Q=exact_ratios(series, pairs),
        q=model_ratios(k, pairs, ctx),
        linf=linf_error(series, k, lower=linf_lower, upper=nhi, ctx=ctx),
        anchors=pairs,
        linf_lower=linf_lower,
    )


def compare_growth(reports) -> tuple:
    """Pairwise |k_minus1| gaps between reports, smallest first."""
    if len(reports) < 2:
        raise LengthError("need at least two reports to compare growth")
    rows = []
    for a, b in itertools.combinations(reports, 2):
        rows.append((a.lattice.name, b.lattice.name, abs(a.k.k_minus1 - b.k.k_minus1)))
    rows.sort(key=lambda row: row[2])
    return tuple(rows)


def format_full(x, ctx: PrecisionContext) -> str:
    """Lossless text form: p/q for rationals, reparseable decimal for reals."""
    if is_rational(x):
        return str(Fraction(x))
    return ctx.emit_str(x)


def format_display(x, ctx: PrecisionContext) -> str:
    return ctx.nstr(x, DISPLAY_DIGITS)


def parse_number(text: str, ctx: PrecisionContext):
    """Inverse of format_full: fraction when exact, context real otherwise."""
    token = text.strip()
    if "/" in token:
        return Fraction(token)
    if "." in token or "e" in token or "E" in token:
        return ctx.real(token)
    try:
        return Fraction(int(token))
    except ValueError:
        raise ParseError(f"bad numeric token {token!r}") from None


def report_to_dict(report: ComparisonReport) -> dict:
    """JSON-ready mapping: full-precision strings plus a 5-digit display block."""
    ctx = PrecisionContext(report.precision)

    def full(x):
        return format_full(x, ctx)

    def disp(x):
        return format_display(x, ctx)

    k_parts = {
        "k_minus1": full(report.k.k_minus1),
        "k0": full(report.k.k0),
        "k1": full(report.k.k1),
        "k2": full(report.k.k2),
        "ln_c": None if report.k.ln_c is None else full(report.k.ln_c),
    }
    return {
        "lattice": {
            "name": report.lattice.name,
            "d": None if report.lattice.d is None else full(report.lattice.d),
            "kind": report.lattice.kind,
        },
        "sign": report.sign,
        "r": report.r,
        "nmax": report.nmax,
        "precision": report.precision,
        "k": k_parts,
        "c": [full(v) for v in report.c.c],
        "Q": [full(v) for v in report.Q],
        "q": [full(v) for v in report.q],
        "linf": full(report.linf),
        "anchors": [[lo, hi] for lo, hi in report.anchors],
        "linf_lower": report.linf_lower,
        "display": {
            "k": [disp(v) for v in report.k.as_tuple()],
            "c": [disp(v) for v in report.c.c],
            "Q": [disp(v) for v in report.Q],
            "q": [disp(v) for v in report.q],
            "linf": disp(report.linf),
        },
    }


def report_from_dict(data: dict) -> ComparisonReport:
    """Rebuild a report from its JSON mapping; display blocks are recomputed."""
    try:
        precision = int(data["precision"])
        ctx = PrecisionContext(precision)

        def num(token):
            return parse_number(token, ctx)

        lat = data["lattice"]
        meta = LatticeMeta(
            name=lat["name"],
            d=None if lat.get("d") is None else Fraction(num(lat["d"])),
            kind=lat.get("kind", "other"),
        )
        kd = data["k"]
        k = AsymptoticExponent(
            num(kd["k_minus1"]),
            num(kd["k0"]),
            num(kd["k1"]),
            num(kd["k2"]),
            ln_c=None if kd.get("ln_c") is None else num(kd["ln_c"]),
        )
        return ComparisonReport(
            lattice=meta,
            sign=data["sign"],
            r=int(data["r"]),
            nmax=int(data["nmax"]),
            precision=precision,
            k=k,
            c=RatioPolynomial(tuple(num(v) for v in data["c"]), sign=data["sign"]),
            Q=tuple(num(v) for v in data["Q"]),
            q=tuple(num(v) for v in data["q"]),
            linf=num(data["linf"]),
            anchors=tuple((int(lo), int(hi)) for lo, hi in data["anchors"]),
            linf_lower=int(data.get("linf_lower", 8)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed report object ({exc})") from None


def _report_rows(reports) -> list[tuple[str, list[str]]]:
    """Shared text/csv table body: (row label, one display cell per lattice)."""
    ctxs = [PrecisionContext(rep.precision) for rep in reports]

    def disp(rep, ctx, value):
        return format_display(value, ctx)

    rows: list[tuple[str, list[str]]] = []
    rows.append(("sign", [rep.sign for rep in reports]))
    rows.append(("r", [str(rep.r) for rep in reports]))
    rows.append(("nmax", [str(rep.nmax) for rep in reports]))
    rows.append(("precision", [str(rep.precision) for rep in reports]))
    rows.append(
        ("anchors", ["  ".join(f"{lo}-{hi}" for lo, hi in rep.anchors) for rep in reports])
    )
    for label, pick in (
        ("k_minus1", lambda k: k.k_minus1),
        ("k0", lambda k: k.k0),
        ("k1", lambda k: k.k1),
        ("k2", lambda k: k.k2),
    ):
        rows.append(
            (label, [disp(rep, ctx, pick(rep.k)) for rep, ctx in zip(reports, ctxs)])
        )
    width = max((len(rep.c.c) for rep in reports), default=0)
    for j in range(width):
        cells = []
        for rep, ctx in zip(reports, ctxs):
            cells.append(disp(rep, ctx, rep.c.c[j]) if j < len(rep.c.c) else "")
        rows.append((f"c{j}", cells))
    for j in range(3):
        rows.append(
            (f"q{j + 1}", [disp(rep, ctx, rep.q[j]) for rep, ctx in zip(reports, ctxs)])
        )
        rows.append(
            (f"Q{j + 1}", [disp(rep, ctx, rep.Q[j]) for rep, ctx in zip(reports, ctxs)])
        )
    rows.append(
        ("linf", [disp(rep, ctx, rep.linf) for rep, ctx in zip(reports, ctxs)])
    )
    return rows


def emit_reports(reports, fmt: str) -> str:
    """Render reports: json is full precision, text/csv show 5-digit displays."""
    if fmt == "json":
        payload = {"reports": [report_to_dict(rep) for rep in reports]}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    names = [rep.lattice.name for rep in reports]
    rows = _report_rows(reports) if reports else []
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["parameter"] + names)
        for label, cells in rows:
            writer.writerow([label] + cells)
        return buf.getvalue()
    if fmt == "text":
        table = [["parameter"] + names] + [[label] + cells for label, cells in rows]
        widths = [max(len(line[j]) for line in table) for j in range(len(table[0]))]
        lines = []
        for line in table:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
        return "\n".join(lines) + "\n"
    raise DomainError(f"unknown output format {fmt!r}")


def parse_reports_json(text: str):
    """Inverse of the json emitter: parse(emit(reports)) == reports."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON ({exc})") from None
    if not isinstance(payload, dict) or "reports" not in payload:
        raise ParseError("expected a top-level object with a 'reports' list")
    return tuple(report_from_dict(item) for item in payload["reports"])
