"""Shared fixtures: synthetic tables and an independent partition counter."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from asymfit import (
    ALTERNATING,
    LatticeMeta,
    PrecisionContext,
    SeriesTable,
    fraction_from_real,
)


def synthetic_table(
    params,
    first: int,
    last: int,
    ctx: PrecisionContext,
    sign: str = ALTERNATING,
    name: str = "synthetic",
) -> SeriesTable:
    """Exact table whose magnitudes are dyadic snapshots of the five-parameter model.

    params = (ln_c, k_minus1, k0, k1, k2). Values are generated at working
    precision and frozen into Fractions, so a solver that reads them back sees
    data consistent with the model to the last working bit.
    """
    ln_c, k_minus1, k0, k1, k2 = (ctx.real(p) for p in params)
    vals = []
    for j in range(first, last + 1):
        rj = ctx.real(j)
        log_mag = ln_c + k_minus1 * rj + k0 * ctx.ln(rj) + k1 / rj + k2 / rj**2
        mag = fraction_from_real(ctx.exp(log_mag))
        if sign == ALTERNATING and j % 2 == 0:
            mag = -mag
        vals.append(mag)
    return SeriesTable(
        tuple(vals), sign=sign, meta=LatticeMeta(name=name), first=first
    )


@lru_cache(maxsize=None)
def _count(n: int, cap: int) -> int:
    if n == 0:
        return 1
    if cap == 0:
        return 0
    if cap > n:
        cap = n
    return _count(n - cap, cap) + _count(n, cap - 1)


def brute_partitions(n: int) -> int:
    """Partition count by direct largest-part recursion (no pentagonal shortcut)."""
    return _count(n, n)


def rel_err(x, y):
    """|x - y| relative to x, exact absolute difference when x is zero."""
    if x == 0:
        return abs(y)
    return abs(x - y) / abs(x)


def scale_table(series: SeriesTable, s: Fraction) -> SeriesTable:
    return SeriesTable(
        tuple(s * v for v in series.values),
        sign=series.sign,
        meta=series.meta,
        first=series.first,
    )
