"""Ratio-polynomial fits, convergence scans, and the log-linear ideal solve."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .duality import AsymptoticExponent
from .errors import DomainError, SignViolation, ZeroCoefficient
from .numerics import (
    DEFAULT_CONTEXT,
    Number,
    PrecisionContext,
    is_rational,
    solve_linear_system,
)
from .series import ALTERNATING, SeriesTable, expected_positive


@dataclass(frozen=True)
class FitConfig:
    """Degree and top index of a ratio fit; nmax=None defers to the table."""

    r: int = 6
    nmax: int | None = None

    def __post_init__(self):
        if self.r < 1:
            raise DomainError("fit degree r must be at least 1")
        if self.nmax is not None and self.nmax < self.r + 2:
            raise DomainError("need nmax >= r + 2 so every window ratio exists")

    def resolve(self, series: SeriesTable) -> tuple[int, int]:
        """Window (nlo, nhi) for this fit against a concrete table."""
        nhi = self.nmax if self.nmax is not None else series.nmax
        nlo = nhi - self.r
        if nhi > series.nmax or nlo - 1 < series.first:
            raise DomainError(
                f"window needs indices {nlo - 1}..{nhi}, table covers "
                f"{series.first}..{series.nmax}"
            )
        return nlo, nhi


@dataclass(frozen=True)
class RatioPolynomial:
    """Polynomial in 1/n modelling the unsigned ratio b(n)/b(n-1)."""

    c: tuple[Number, ...]
    sign: str = ALTERNATING

    def __post_init__(self):
        if not self.c:
            raise DomainError("need at least the constant coefficient")
        object.__setattr__(self, "c", tuple(self.c))

    @property
    def r(self) -> int:
        return len(self.c) - 1

    def evaluate(self, n: int):
        """c0 + c1/n + ... + cr/n**r by Horner in 1/n; exact on rational c."""
        if n < 1:
            raise DomainError("n must be a positive integer")
        inv = Fraction(1, n)
        acc = Fraction(self.c[-1]) if is_rational(self.c[-1]) else self.c[-1]
        for coeff in reversed(self.c[:-1]):
            acc = coeff + inv * acc
        return acc


def ratio_sign(series: SeriesTable) -> int:
    """Sign factored out of consecutive ratios: -1 alternating, +1 positive."""
    return -1 if series.sign == ALTERNATING else 1


def fit_ratio_polynomial(
    series: SeriesTable,
    config: FitConfig = FitConfig(),
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> RatioPolynomial:
    """Fit c0..cr so the model matches r+1 consecutive unsigned ratios exactly.

    Row n is [1, 1/n, ..., 1/n**r] against sign * b(n)/b(n-1) for n in the
    window nmax-r..nmax. Ratios are formed exactly before any real conversion;
    rational tables keep the whole solve in Fraction arithmetic.
    """
    nlo, nhi = config.resolve(series)
    sgn = ratio_sign(series)
    matrix = []
    rhs = []
    for n in range(nlo, nhi + 1):
        inv = Fraction(1, n)
        matrix.append([inv**j for j in range(config.r + 1)])
        rhs.append(sgn * series.ratio(n))
    c = solve_linear_system(matrix, rhs, ctx)
    return RatioPolynomial(tuple(c), sign=series.sign)


@dataclass(frozen=True)
class ScanRow:
    """One line of a convergence scan: degree and the two leading coefficients."""

    r: int
    c0: Number
    c1: Number | None


def convergence_scan(
    series: SeriesTable,
    r_values: Iterable[int],
    nmax: int | None = None,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> tuple[ScanRow, ...]:
    """Leading fit coefficients for each requested degree at a fixed top index.

    r=1 is the zero-parameter baseline: the bare top ratio sign*b(nmax)/b(nmax-1)
    reported as c0, with no 1/n term. Every other row is a genuine degree-r fit.
    """
    top = nmax if nmax is not None else series.nmax
    rows = []
    for r in r_values:
        if r < 1:
            raise DomainError("scan degrees must be at least 1")
        if r == 1:
            if top > series.nmax or top - 1 < series.first:
                raise DomainError(
                    f"baseline ratio needs indices {top - 1}..{top}, table covers "
                    f"{series.first}..{series.nmax}"
                )
            rows.append(ScanRow(1, ratio_sign(series) * series.ratio(top), None))
            continue
        poly = fit_ratio_polynomial(series, FitConfig(r=r, nmax=top), ctx)
        rows.append(ScanRow(r, poly.c[0], poly.c[1]))
    return tuple(rows)


def solve_ideal(
    series: SeriesTable,
    top_index: int | None = None,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> AsymptoticExponent:
    """Five-parameter solve of the ideal problem at indices top_index-4..top_index.

    Taking logarithms of |b(j)| makes the model linear in the five unknowns
    (ln c, k_minus1, k0, k1, k2) with rows [1, j, ln j, 1/j, 1/j**2]. Returns
    the exponent vector with its constant attached.
    """
    jhi = top_index if top_index is not None else series.nmax
    jlo = jhi - 4
    if jhi > series.nmax or jlo < series.first:
        raise DomainError(
            f"ideal solve needs indices {jlo}..{jhi}, table covers "
            f"{series.first}..{series.nmax}"
        )
    matrix = []
    rhs = []
    for j in range(jlo, jhi + 1):
        mag = expected_positive(series, j)
        if mag == 0:
            raise ZeroCoefficient(j)
        if mag < 0:
            raise SignViolation(j, series[j])
        rj = ctx.real(j)
        inv = 1 / rj
        matrix.append([ctx.real(1), rj, ctx.ln(rj), inv, inv**2])
        rhs.append(ctx.ln(mag))
    sol = solve_linear_system(matrix, rhs, ctx)
    return AsymptoticExponent(sol[1], sol[2], sol[3], sol[4], ln_c=sol[0])
