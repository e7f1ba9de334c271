"""Series containers, built-in generators, file ingestion, and lattice evaluators."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import (
    DomainError,
    MissingAlpha,
    MissingIndex,
    ParseError,
    SignViolation,
    ZeroCoefficient,
)
from .numerics import DEFAULT_CONTEXT, PrecisionContext, is_rational

ALTERNATING = "alternating"
ALL_POSITIVE = "positive"
SIGN_CONVENTIONS = (ALTERNATING, ALL_POSITIVE)

SERIES_KINDS = ("mayer_b", "dimer_a", "susceptibility", "partitions", "other")


@dataclass(frozen=True)
class LatticeMeta:
    """Identity of a coefficient table: label, half-coordination number, kind."""

    name: str = "series"
    d: Fraction | None = None
    kind: str = "other"

    def __post_init__(self):
        if self.kind not in SERIES_KINDS:
            raise DomainError(f"unknown series kind {self.kind!r}")
        if self.d is not None and self.d <= 0:
            raise DomainError("d must be positive when present")


@dataclass(frozen=True)
class SeriesTable:
    """Contiguously indexed exact coefficients with a declared sign convention."""

    values: tuple[Fraction, ...]
    sign: str = ALTERNATING
    meta: LatticeMeta = field(default_factory=LatticeMeta)
    first: int = 1

    def __post_init__(self):
        if not self.values:
            raise DomainError("a series table needs at least one entry")
        if self.first < 1:
            raise DomainError("series indices start at 1 or above")
        if self.sign not in SIGN_CONVENTIONS:
            raise DomainError(f"unknown sign convention {self.sign!r}")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @property
    def nmax(self) -> int:
        return self.first + len(self.values) - 1

    def covers(self, n: int) -> bool:
        return self.first <= n <= self.nmax

    def __getitem__(self, n: int) -> Fraction:
        if not self.covers(n):
            raise MissingIndex(n, f"table covers {self.first}..{self.nmax}")
        return self.values[n - self.first]

    def indices(self) -> range:
        return range(self.first, self.nmax + 1)

    def ratio(self, n: int) -> Fraction:
        """Exact consecutive ratio b(n)/b(n-1)."""
        prev = self[n - 1]
        if prev == 0:
            raise ZeroCoefficient(n - 1)
        return self[n] / prev


@dataclass(frozen=True)
class SignReport:
    """Outcome of the sign-convention gate."""

    clean: bool
    violation_index: int | None = None
    violation_value: Fraction | None = None


def expected_positive(series: SeriesTable, n: int) -> Fraction:
    """Coefficient with the convention's sign stripped; positive iff compliant."""
    v = series[n]
    if series.sign == ALTERNATING and n % 2 == 0:
        return -v
    return v


def check_sign_pattern(series: SeriesTable) -> SignReport:
    """Confirm the declared convention holds at every index (ingestion gate)."""
    for n in series.indices():
        if expected_positive(series, n) <= 0:
            return SignReport(False, n, series[n])
    return SignReport(True)


def gen_rect_d1(nmax: int) -> SeriesTable:
    """One-dimensional chain coefficients, exact in closed form.

    b(1) = 1 and |b(n)| = C(2n-1, n)/n with alternating signs; consecutive
    ratios collapse to -(4 - 6/n + 2/n**2) exactly.
    """
    if nmax < 1:
        raise DomainError("nmax must be at least 1")
    vals = []
    for n in range(1, nmax + 1):
        mag = Fraction(math.comb(2 * n - 1, n), n)
        vals.append(mag if n % 2 else -mag)
    meta = LatticeMeta(name="rect-d1", d=Fraction(1), kind="mayer_b")
    return SeriesTable(tuple(vals), sign=ALTERNATING, meta=meta)


def gen_partitions(nmax: int) -> SeriesTable:
    """Integer partition counts p(1)..p(nmax) via the pentagonal-number recurrence."""
    if nmax < 1:
        raise DomainError("nmax must be at least 1")
    p = [1] + [0] * nmax
    for n in range(1, nmax + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    meta = LatticeMeta(name="partitions", kind="partitions")
    return SeriesTable(tuple(Fraction(v) for v in p[1:]), sign=ALL_POSITIVE, meta=meta)


_HEADER_KEYS = ("name", "d", "sign", "kind", "first")


def _parse_value(token: str, line_no: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad numeric value {token!r} ({exc})", line_no) from None


def _split_lines(text: str):
    """Yield (line_no, headers-or-data) with comments and blanks dropped."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield line_no, line


def _collect(text: str, data_fields: int):
    headers: dict[str, str] = {}
    rows = []
    for line_no, line in _split_lines(text):
        if "=" in line and not line.split("=", 1)[0].strip().lstrip("+-").isdigit():
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _HEADER_KEYS:
                raise ParseError(f"unknown header {key!r}", line_no)
            if key in headers:
                raise ParseError(f"duplicate header {key!r}", line_no)
            if not value:
                raise ParseError(f"empty value for header {key!r}", line_no)
            headers[key] = value
            continue
        fields = line.split()
        if len(fields) != data_fields:
            raise ParseError(
                f"expected {data_fields} whitespace-separated fields, got {len(fields)}",
                line_no,
            )
        rows.append((line_no, fields))
    return headers, rows


def _meta_from_headers(headers: Mapping[str, str]) -> tuple[LatticeMeta, str, int]:
    d = None
    if "d" in headers:
        d = _parse_value(headers["d"], 0)
        if d <= 0:
            raise ParseError(f"d must be positive, got {headers['d']}")
    kind = headers.get("kind", "other")
    if kind not in SERIES_KINDS:
        raise ParseError(f"unknown kind {kind!r}")
    sign = headers.get("sign")
    if sign is None:
        raise ParseError("missing required header 'sign=alternating|positive'")
    if sign not in SIGN_CONVENTIONS:
        raise ParseError(f"unknown sign convention {sign!r}")
    first = 1
    if "first" in headers:
        try:
            first = int(headers["first"])
        except ValueError:
            raise ParseError(f"first must be an integer, got {headers['first']!r}") from None
        if first < 1:
            raise ParseError("first must be at least 1")
    meta = LatticeMeta(name=headers.get("name", "series"), d=d, kind=kind)
    return meta, sign, first


def parse_series_file(text: str) -> SeriesTable:
    """Read the series interchange format into a validated table."""
    headers, rows = _collect(text, data_fields=2)
    meta, sign, first = _meta_from_headers(headers)
    if not rows:
        raise ParseError("no data lines present")

    entries: dict[int, Fraction] = {}
    for line_no, (n_tok, v_tok) in rows:
        try:
            n = int(n_tok)
        except ValueError:
            raise ParseError(f"bad index {n_tok!r}", line_no) from None
        if n in entries:
            raise ParseError(f"duplicate index n={n}", line_no)
        entries[n] = _parse_value(v_tok, line_no)

    lo, hi = min(entries), max(entries)
    if lo != first:
        raise ParseError(f"lowest index {lo} does not match declared first={first}")
    missing = [n for n in range(lo, hi + 1) if n not in entries]
    if missing:
        raise ParseError(f"gap in indices: missing n={missing[0]}")

    table = SeriesTable(
        tuple(entries[n] for n in range(lo, hi + 1)), sign=sign, meta=meta, first=lo
    )
    gate = check_sign_pattern(table)
    if not gate.clean:
        raise SignViolation(gate.violation_index, gate.violation_value)
    return table


def serialize_series(series: SeriesTable) -> str:
    """Inverse of parse_series_file; parse(serialize(t)) == t."""
    lines = [f"name={series.meta.name}"]
    if series.meta.d is not None:
        lines.append(f"d={series.meta.d}")
    lines.append(f"kind={series.meta.kind}")
    lines.append(f"sign={series.sign}")
    if series.first != 1:
        lines.append(f"first={series.first}")
    for n in series.indices():
        lines.append(f"{n} {series[n]}")
    return "\n".join(lines) + "\n"


def alpha_window(n: int) -> range:
    """Indices i with n/2 - 1 < i <= n."""
    return range((n - 2) // 2 + 1, n + 1)


@dataclass(frozen=True)
class AlphaTable:
    """Sparse map (n, i) -> alpha_i(n), constrained to the index window."""

    entries: Mapping[tuple[int, int], Fraction]

    def __post_init__(self):
        checked = {}
        for (n, i), v in self.entries.items():
            if i not in alpha_window(n):
                raise DomainError(f"alpha entry (n={n}, i={i}) lies outside the window")
            checked[(n, i)] = Fraction(v)
        object.__setattr__(self, "entries", checked)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        n, i = key
        try:
            return self.entries[(n, i)]
        except KeyError:
            raise MissingAlpha(n, i) from None


def parse_alpha_file(text: str) -> AlphaTable:
    """Read alpha data lines '<n> <i> <value>' (same headers as series files)."""
    headers, rows = _collect(text, data_fields=3)
    if "sign" in headers or "first" in headers:
        raise ParseError("sign/first headers do not apply to alpha files")
    entries: dict[tuple[int, int], Fraction] = {}
    for line_no, (n_tok, i_tok, v_tok) in rows:
        try:
            n, i = int(n_tok), int(i_tok)
        except ValueError:
            raise ParseError(f"bad index pair {n_tok!r} {i_tok!r}", line_no) from None
        if (n, i) in entries:
            raise ParseError(f"duplicate alpha entry (n={n}, i={i})", line_no)
        entries[(n, i)] = _parse_value(v_tok, line_no)
    try:
        return AlphaTable(entries)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def a_from_alpha(alpha: AlphaTable, d: Fraction | int, n: int) -> Fraction:
    """Reduced-coefficient value: sum of alpha_i(n)/d**i over the window."""
    d = Fraction(d)
    if d <= 0:
        raise DomainError("d must be positive")
    if n < 1:
        raise DomainError("n must be a positive integer")
    total = Fraction(0)
    for i in alpha_window(n):
        total += alpha[(n, i)] / d**i
    return total


def entropy_density(
    a_coeffs: Mapping[int, Fraction],
    d: Fraction | int,
    p,
    kmax: int,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
):
    """Dimer entropy density at dimer density p, truncating the tail at kmax.

    The boundary limits p*ln(p) -> 0 at p=0 and (1-p)*ln(1-p) -> 0 at p=1 are
    applied so both endpoints evaluate cleanly.
    """
    d = Fraction(d) if is_rational(d) else d
    if d <= 0:
        raise DomainError("d must be positive")
    if not 0 <= p <= 1:
        raise DomainError("dimer density p must lie in [0, 1]")
    for k in range(2, kmax + 1):
        if k not in a_coeffs:
            raise MissingIndex(k, "a-coefficients must cover 2..kmax")

    rp = ctx.real(p)
    zero = ctx.real(0)
    plnp = zero if p == 0 else rp * ctx.ln(rp)
    qlnq = zero if p == 1 else (1 - rp) * ctx.ln(1 - rp)
    head = (rp * ctx.ln(2 * ctx.real(d)) - plnp - 2 * qlnq - rp) / 2
    tail = zero
    for k in range(2, kmax + 1):
        tail += ctx.real(a_coeffs[k]) * rp**k
    return head + tail
